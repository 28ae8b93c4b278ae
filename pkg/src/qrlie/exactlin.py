"""Exact rational and multivariate-polynomial linear algebra.

Conventions used throughout the package:

* a matrix is a list of rows, each row a list of ``Fraction``/``int``
  (anything ``Fraction`` accepts);
* a vector is a flat list of the same scalars;
* everything is exact -- no floats anywhere.

Hot kernels (rank, kernel, solving) run fraction-free Bareiss
elimination over integers, using gmpy2's mpz/mpq when available.
Randomized generic rank follows Schwartz-Zippel: evaluate at uniform
integer points and take the max rank over trials; an exact mode does
fraction-free elimination directly over the polynomial ring.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

try:
    from gmpy2 import mpq, mpz
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    mpz = int
    mpq = Fraction

Rat = Fraction


class CapacityError(Exception):
    """Input exceeds a documented combinatorial guard."""


def rat(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def parse_rat(s: str) -> Fraction:
    return Fraction(s)


def format_rat(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


# ---------------------------------------------------------------------------
# basic matrix helpers
# ---------------------------------------------------------------------------

def shape(M):
    return (len(M), len(M[0]) if M else 0)


def zeros(n, m):
    return [[Fraction(0)] * m for _ in range(n)]


def identity(n):
    M = zeros(n, n)
    for i in range(n):
        M[i][i] = Fraction(1)
    return M


def mat_mul(A, B):
    n, k = shape(A)
    k2, m = shape(B)
    assert k == k2, "shape mismatch"
    Bt = list(zip(*B)) if m else []
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def mat_vec(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def mat_add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_scale(A, c):
    return [[c * a for a in row] for row in A]


def mat_eq(A, B):
    return shape(A) == shape(B) and all(
        a == b for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def is_zero_matrix(A):
    return all(x == 0 for row in A for x in row)


def transpose(A):
    return [list(col) for col in zip(*A)] if A and A[0] else ([[]] if A else [])


def commutator(A, B):
    return mat_sub(mat_mul(A, B), mat_mul(B, A))


def _int_rows(M):
    """Row-scale M to integer entries (mpz); preserves rank and kernel."""
    out = []
    for row in M:
        den = 1
        for x in row:
            if isinstance(x, Fraction) and x.denominator != 1:
                den = den * x.denominator // math.gcd(den, x.denominator)
        if den == 1:
            out.append([mpz(int(x)) for x in row])
        else:
            out.append([mpz(int(x * den)) for x in row])
    return out


def _bareiss_echelon(A):
    """In-place fraction-free echelon form of an mpz matrix.

    Returns (rank, pivot_columns). Entries stay integral (minors of the
    input up to sign), so intermediate growth is polynomial in bit size.
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    piv_cols = []
    r = 0
    prev = mpz(1)
    for c in range(cols):
        if r == rows:
            break
        sel = -1
        best = None
        for i in range(r, rows):
            a = A[i][c]
            if a:
                v = abs(a)
                if best is None or v < best:
                    best, sel = v, i
        if sel < 0:
            continue
        if sel != r:
            A[r], A[sel] = A[sel], A[r]
        piv = A[r][c]
        for i in range(r + 1, rows):
            ric = A[i][c]
            Ai, Ar = A[i], A[r]
            if ric:
                for j in range(c + 1, cols):
                    Ai[j] = (piv * Ai[j] - ric * Ar[j]) // prev
            elif prev != 1:
                for j in range(c + 1, cols):
                    Ai[j] = (piv * Ai[j]) // prev
            else:
                for j in range(c + 1, cols):
                    Ai[j] = piv * Ai[j]
            Ai[c] = mpz(0)
        prev = piv
        piv_cols.append(c)
        r += 1
    return r, piv_cols


def rank(M) -> int:
    """Exact row rank over the rationals (fraction-free elimination)."""
    n, m = shape(M)
    if n == 0 or m == 0:
        return 0
    A = _int_rows(M)
    r, _ = _bareiss_echelon(A)
    return r


def kernel(M):
    """Basis of the right kernel of M, as primitive integer vectors.

    The returned vectors are linearly independent, satisfy M v = 0
    (verified), and their count equals cols - rank(M).
    """
    n, m = shape(M)
    if m == 0:
        return []
    if n == 0:
        return [[Fraction(i == j) for i in range(m)] for j in range(m)]
    A = _int_rows(M)
    r, piv_cols = _bareiss_echelon(A)
    piv_set = set(piv_cols)
    free_cols = [c for c in range(m) if c not in piv_set]
    basis = []
    for f in free_cols:
        x = [mpq(0)] * m
        x[f] = mpq(1)
        for i in range(r - 1, -1, -1):
            p = piv_cols[i]
            s = mpq(0)
            row = A[i]
            for j in range(p + 1, m):
                if x[j] and row[j]:
                    s += row[j] * x[j]
            x[p] = -s / row[p]
        den = 1
        for v in x:
            d = int(v.denominator)
            den = den * d // math.gcd(den, d)
        ints = [int(v * den) for v in x]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        basis.append([Fraction(v) for v in ints])
    for v in basis:
        assert all(sum(row[j] * v[j] for j in range(m)) == 0 for row in M), \
            "kernel verification failed"
    return basis


def solve(A, b):
    """One exact solution x of A x = b, or None if inconsistent."""
    n, m = shape(A)
    aug = [list(row) + [bb] for row, bb in zip(A, b)]
    E = _int_rows(aug)
    r, piv_cols = _bareiss_echelon(E)
    if m in piv_cols:
        return None
    x = [mpq(0)] * m
    for i in range(r - 1, -1, -1):
        p = piv_cols[i]
        row = E[i]
        s = mpq(row[m])
        for j in range(p + 1, m):
            if x[j] and row[j]:
                s -= row[j] * x[j]
        x[p] = s / row[p]
    sol = [Fraction(v.numerator, v.denominator) if not isinstance(v, Fraction) else v
           for v in x]
    if any(sum(ra * xa for ra, xa in zip(row, sol)) != bb for row, bb in zip(A, b)):
        return None
    return sol


def rref(M):
    """Reduced row echelon form over Q. Returns (R, pivot_columns)."""
    n, m = shape(M)
    R = [[mpq(Fraction(x)) for x in row] for row in M]
    piv_cols = []
    r = 0
    for c in range(m):
        sel = next((i for i in range(r, n) if R[i][c]), None)
        if sel is None:
            continue
        R[r], R[sel] = R[sel], R[r]
        inv = 1 / R[r][c]
        R[r] = [v * inv for v in R[r]]
        for i in range(n):
            if i != r and R[i][c]:
                f = R[i][c]
                R[i] = [vi - f * vr for vi, vr in zip(R[i], R[r])]
        piv_cols.append(c)
        r += 1
        if r == n:
            break
    out = [[Fraction(v.numerator, v.denominator) if not isinstance(v, Fraction) else v
            for v in row] for row in R]
    return out, piv_cols


def invert(M):
    n, m = shape(M)
    assert n == m
    R, piv = rref([list(row) + list(idr) for row, idr in zip(M, identity(n))])
    if piv[:n] != list(range(n)):
        raise ValueError("matrix not invertible")
    return [row[n:] for row in R]


def det(M):
    """Exact determinant (Bareiss; last pivot of the full elimination)."""
    n, m = shape(M)
    assert n == m
    if n == 0:
        return Fraction(1)
    den = Fraction(1)
    A = []
    for row in M:
        d = 1
        for x in row:
            fx = Fraction(x)
            d = d * fx.denominator // math.gcd(d, fx.denominator)
        den *= d
        A.append([mpz(int(Fraction(x) * d)) for x in row])
    sign = 1
    prev = mpz(1)
    for c in range(n):
        sel = next((i for i in range(c, n) if A[i][c]), None)
        if sel is None:
            return Fraction(0)
        if sel != c:
            A[c], A[sel] = A[sel], A[c]
            sign = -sign
        piv = A[c][c]
        for i in range(c + 1, n):
            ric = A[i][c]
            for j in range(c + 1, n):
                A[i][j] = (piv * A[i][j] - ric * A[c][j]) // prev
            A[i][c] = mpz(0)
        prev = piv
    return Fraction(sign * int(prev)) / den


# ---------------------------------------------------------------------------
# Pfaffians
# ---------------------------------------------------------------------------

def _check_antisymmetric(M):
    n, m = shape(M)
    if n != m:
        raise ValueError("pfaffian needs a square matrix")
    for i in range(n):
        if M[i][i] != 0:
            raise ValueError("pfaffian needs an antisymmetric matrix (diagonal)")
        for j in range(i + 1, n):
            if M[i][j] != -M[j][i]:
                raise ValueError("pfaffian needs an antisymmetric matrix")
    if n % 2 != 0:
        raise ValueError("pfaffian needs even size")


def pfaffian(M) -> Fraction:
    """Pfaffian of an antisymmetric matrix of even size.

    Sign convention: the block-diagonal matrix of J = [[0,1],[-1,0]]
    blocks has Pfaffian +1.
    """
    _check_antisymmetric(M)
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    pf = Fraction(1)
    for k in range(0, n, 2):
        sel = next((i for i in range(k + 1, n) if A[k][i]), None)
        if sel is None:
            return Fraction(0)
        if sel != k + 1:
            A[k + 1], A[sel] = A[sel], A[k + 1]
            for row in A:
                row[k + 1], row[sel] = row[sel], row[k + 1]
            pf = -pf
        piv = A[k][k + 1]
        pf *= piv
        for i in range(k + 2, n):
            for j in range(i + 1, n):
                A[i][j] += (A[k][j] * A[k + 1][i] - A[k][i] * A[k + 1][j]) / piv
                A[j][i] = -A[i][j]
    return pf


# ---------------------------------------------------------------------------
# multivariate polynomials (sparse, exact)
# ---------------------------------------------------------------------------

class MPoly:
    """Sparse multivariate polynomial over Q.

    terms maps exponent tuples (one slot per variable) to nonzero
    Fraction coefficients.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, variables, terms=None):
        self.vars = tuple(variables)
        self.terms = {}
        if terms:
            for e, c in terms.items():
                c = Fraction(c)
                if c:
                    assert len(e) == len(self.vars)
                    self.terms[tuple(e)] = c

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, variables):
        return cls(variables)

    @classmethod
    def const(cls, variables, c):
        v = tuple(variables)
        return cls(v, {tuple([0] * len(v)): Fraction(c)})

    @classmethod
    def var(cls, variables, name):
        v = tuple(variables)
        e = [0] * len(v)
        e[v.index(name)] = 1
        return cls(v, {tuple(e): Fraction(1)})

    # -- predicates --------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def total_degree(self):
        return max((sum(e) for e in self.terms), default=-1)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.vars == other.vars and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- arithmetic ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(self.vars, other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MPoly(self.vars, out)

    def __neg__(self):
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MPoly):
            other = MPoly.const(self.vars, other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, MPoly):
            c = Fraction(other)
            return MPoly(self.vars, {e: cc * c for e, cc in self.terms.items()})
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MPoly(self.vars, out)

    __rmul__ = __mul__

    def evaluate(self, point):
        """Evaluate at a point given as a sequence aligned with self.vars."""
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    # -- display -------------------------------------------------------------
    def __repr__(self):
        return f"MPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        def mono(e):
            parts = []
            for name, k in zip(self.vars, e):
                if k == 1:
                    parts.append(name)
                elif k:
                    parts.append(f"{name}^{k}")
            return "*".join(parts)
        bits = []
        for e in sorted(self.terms, key=lambda t: (-sum(t), t)):
            c = self.terms[e]
            m = mono(e)
            if not m:
                s = format_rat(c)
            elif c == 1:
                s = m
            elif c == -1:
                s = f"-{m}"
            else:
                s = f"{format_rat(c)}*{m}"
            bits.append(s)
        out = bits[0]
        for s in bits[1:]:
            out += f" - {s[1:]}" if s.startswith("-") else f" + {s}"
        return out


def mpoly_exact_div(num: MPoly, den: MPoly) -> MPoly:
    """Exact division num / den; raises if the division is not exact.

    Only used inside fraction-free elimination, where exactness is
    guaranteed by the Bareiss identity.
    """
    if den.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if num.is_zero():
        return MPoly.zero(num.vars)
    dlead = max(den.terms)  # lex-greatest exponent
    dcoef = den.terms[dlead]
    rem = MPoly(num.vars, dict(num.terms))
    qterms = {}
    while not rem.is_zero():
        rlead = max(rem.terms)
        e = tuple(a - b for a, b in zip(rlead, dlead))
        if any(k < 0 for k in e):
            raise ArithmeticError("inexact polynomial division")
        c = rem.terms[rlead] / dcoef
        qterms[e] = qterms.get(e, Fraction(0)) + c
        rem = rem - MPoly(num.vars, {e: c}) * den
    return MPoly(num.vars, qterms)


def proportional(p: MPoly, q: MPoly) -> bool:
    """True iff p = c*q for some nonzero rational c."""
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    if set(p.terms) != set(q.terms):
        return False
    e0 = next(iter(p.terms))
    c = p.terms[e0] / q.terms[e0]
    return all(pc == c * q.terms[e] for e, pc in p.terms.items())


def pfaffian_poly(M) -> MPoly:
    """Pfaffian of an antisymmetric matrix of MPoly entries.

    Recursive expansion along the first row with memoization on index
    subsets; guarded at size 12.
    """
    n = len(M)
    if n % 2 != 0:
        raise ValueError("pfaffian needs even size")
    for i in range(n):
        if not (M[i][i].is_zero()):
            raise ValueError("pfaffian needs an antisymmetric matrix (diagonal)")
        for j in range(i + 1, n):
            if not (M[i][j] + M[j][i]).is_zero():
                raise ValueError("pfaffian needs an antisymmetric matrix")
    if n > 12:
        raise CapacityError(f"pfaffian_poly guarded at size 12, got {n}")
    variables = M[0][0].vars if n else ()
    cache = {}

    def pf(idx):
        if not idx:
            return MPoly.const(variables, 1)
        if idx in cache:
            return cache[idx]
        i = idx[0]
        rest = idx[1:]
        acc = MPoly.zero(variables)
        for pos, j in enumerate(rest):
            sub = tuple(k for k in rest if k != j)
            term = M[i][j] * pf(sub)
            acc = acc + term if pos % 2 == 0 else acc - term
        cache[idx] = acc
        return acc

    return pf(tuple(range(n)))


# ---------------------------------------------------------------------------
# symbolic matrices with linear entries, generic rank
# ---------------------------------------------------------------------------

@dataclass
class LinMatrix:
    """Antisymmetric square matrix of degree <= 1 polynomials (no constant
    term), e.g. the Kirillov form with the linear form left symbolic."""

    variables: tuple
    entries: list  # list of rows of MPoly

    def __post_init__(self):
        n = len(self.entries)
        for i in range(n):
            assert len(self.entries[i]) == n
            for j in range(n):
                p = self.entries[i][j]
                assert p.total_degree() <= 1
                assert tuple([0] * len(self.variables)) not in p.terms
                if not (p + self.entries[j][i]).is_zero():
                    raise ValueError("LinMatrix must be antisymmetric")

    @property
    def size(self):
        return len(self.entries)

    def evaluate(self, point):
        """Numeric matrix at a point (sequence aligned with variables)."""
        return [[p.evaluate(point) for p in row] for row in self.entries]

    def evaluate_int(self, point):
        """Fast path: integer point, entries as exact Fractions."""
        n = self.size
        out = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                s = Fraction(0)
                for e, c in self.entries[i][j].terms.items():
                    k = next(t for t, kk in enumerate(e) if kk)
                    s += c * point[k]
                out[i][j] = s
        return out


@dataclass(frozen=True)
class SampleConfig:
    """Randomized-genericity settings; the seed makes every run reproducible."""

    trials: int = 3
    bound: int = 2 ** 31
    seed: int = 0

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.bound < 1:
            raise ValueError("bound must be positive")


DEFAULT_CONFIG = SampleConfig()


@dataclass
class RankCertificate:
    """Record of a randomized generic-rank computation."""

    trials: int
    bound: int
    seed: int
    ranks: list = field(default_factory=list)
    size: int = 0

    @property
    def value(self):
        return max(self.ranks, default=0)

    @property
    def sz_bound(self) -> Fraction:
        """Upper bound on P(all trials underestimate the generic rank)."""
        per = min(Fraction(1), Fraction(self.size, 2 * self.bound))
        return per ** self.trials

    def to_json(self):
        return {
            "trials": self.trials,
            "bound": self.bound,
            "seed": self.seed,
            "ranks": list(self.ranks),
            "sz_bound": format_rat(self.sz_bound),
        }


def generic_rank_certified(M: LinMatrix, cfg: SampleConfig = DEFAULT_CONFIG):
    """Randomized generic rank of a symbolic matrix with its certificate."""
    rng = random.Random(cfg.seed)
    cert = RankCertificate(trials=cfg.trials, bound=cfg.bound, seed=cfg.seed,
                           size=M.size)
    nv = len(M.variables)
    for _ in range(cfg.trials):
        point = [rng.randint(-cfg.bound, cfg.bound) for _ in range(nv)]
        cert.ranks.append(rank(M.evaluate_int(point)))
    return cert.value, cert


def generic_rank(M: LinMatrix, cfg: SampleConfig = DEFAULT_CONFIG) -> int:
    value, _ = generic_rank_certified(M, cfg)
    return value


def generic_rank_exact(M: LinMatrix) -> int:
    """Deterministic generic rank: fraction-free elimination over the
    polynomial ring with nonzero-polynomial pivoting."""
    n = M.size
    A = [[p for p in row] for row in M.entries]
    prev = MPoly.const(M.variables, 1)
    r = 0
    for c in range(n):
        if r == n:
            break
        sel = None
        for i in range(r, n):
            if not A[i][c].is_zero():
                if sel is None or len(A[i][c].terms) < len(A[sel][c].terms):
                    sel = i
        if sel is None:
            continue
        if sel != r:
            A[r], A[sel] = A[sel], A[r]
        piv = A[r][c]
        for i in range(r + 1, n):
            ric = A[i][c]
            for j in range(c + 1, n):
                A[i][j] = mpoly_exact_div(piv * A[i][j] - ric * A[r][j], prev)
            A[i][c] = MPoly.zero(M.variables)
        prev = piv
        r += 1
    return r
