"""Jordan-Chevalley decomposition over Q and the quasi-reductivity oracle.

The additive decomposition M = S + N is computed classically: f = minimal
polynomial, g = f / gcd(f, f') its squarefree part, then the Newton
iteration a <- a - g(a) * g'(a)^-1 mod f starting from a = t converges in
at most ceil(log2 deg f) steps; S = a(M).

For the unipotent-defect oracle we need only the dimension (and a basis)
of the set of nilpotent elements of a commuting span.  That set is the
radical of the trace form tr(XY) taken over the associative closure of
the span: in characteristic 0 a commuting matrix family acting on V has
tr(X Y) = 0 for all Y in the closure exactly when all power sums of X's
eigenvalues vanish, i.e. X is nilpotent.  This avoids per-element Newton
iterations on large rationals; jordan_chevalley stays available and the
two routes are cross-checked in the test suite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .exactlin import (
    DEFAULT_CONFIG,
    SampleConfig,
    commutator,
    format_rat,
    is_zero_matrix,
    kernel,
    mat_mul,
    mat_sub,
    rank,
    shape,
)
from .liealg import (
    DomainError,
    LieAlgebra,
    SamplingError,
    Subalgebra,
    center,
    index_certified,
    kirillov_form,
    sample_regular_form,
    stabilizer,
)


class CapabilityError(DomainError):
    """The operation needs a matrix realization the algebra does not have."""


class UnsupportedFormError(DomainError):
    """Stabilizer shape outside the supported (abelian-radical) cases."""


# ---------------------------------------------------------------------------
# dense polynomial helpers over Q (ascending coefficient lists)
# ---------------------------------------------------------------------------

def _ptrim(p):
    while p and p[-1] == 0:
        p.pop()
    return p

def _padd(p, q):
    n = max(len(p), len(q))
    return _ptrim([
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0)
        for i in range(n)])

def _pscale(p, c):
    return _ptrim([c * x for x in p]) if c else []

def _pmul(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                if b:
                    out[i + j] += a * b
    return _ptrim(out)

def _pdivmod(p, q):
    assert q
    p = list(p)
    d = len(q) - 1
    lead = q[-1]
    quot = [Fraction(0)] * max(0, len(p) - d)
    while len(p) - 1 >= d and p:
        c = p[-1] / lead
        k = len(p) - 1 - d
        quot[k] = c
        for i in range(len(q)):
            p[k + i] -= c * q[i]
        _ptrim(p)
    return _ptrim(quot), p

def _pmonic(p):
    return _pscale(p, 1 / p[-1]) if p else []

def _pgcd(p, q):
    p, q = list(p), list(q)
    while q:
        p, q = q, _pdivmod(p, q)[1]
    return _pmonic(p)

def _pderiv(p):
    return _ptrim([i * c for i, c in enumerate(p)][1:])

def _pmod(p, f):
    return _pdivmod(p, f)[1]

def _pinvmod(p, f):
    """Inverse of p modulo f (extended Euclid); p must be coprime to f."""
    r0, r1 = list(f), _pmod(p, f)
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _padd(s0, _pscale(_pmul(q, s1), Fraction(-1)))
    if len(r0) != 1:
        raise ArithmeticError("polynomial not invertible modulo f")
    return _pscale(s0, 1 / r0[0])

def _pcompose_mod(p, a, f):
    """p(a) mod f via Horner."""
    out = []
    for c in reversed(p):
        out = _pmod(_padd(_pmul(out, a), [c] if c else []), f)
    return out

def _peval_matrix(p, M):
    n = len(M)
    out = [[Fraction(0)] * n for _ in range(n)]
    for c in reversed(p):
        out = mat_mul(out, M)
        for i in range(n):
            out[i][i] += c
    return out


def minimal_polynomial(M):
    """Monic minimal polynomial of a square rational matrix, by Krylov
    iteration per basis vector with lcm of the local relations."""
    n = len(M)
    if n == 0:
        return [Fraction(1)]
    M = [[Fraction(x) for x in row] for row in M]
    f = [Fraction(1)]
    for s in range(n):
        if _peval_is_zero(f, M):
            break
        v = [Fraction(i == s) for i in range(n)]
        # Krylov sequence with incremental elimination
        rows, combos = [], []
        cur = v
        local = None
        for step in range(n + 1):
            red = list(cur)
            comb = [Fraction(0)] * (step + 1)
            comb[step] = Fraction(1)
            for r, cb in zip(rows, combos):
                p = next((i for i, x in enumerate(r) if x), None)
                if p is not None and red[p]:
                    fac = red[p] / r[p]
                    red = [a - fac * b for a, b in zip(red, r)]
                    for i, b in enumerate(cb):
                        comb[i] -= fac * b
            if not any(red):
                local = _pmonic(_ptrim(list(comb)))
                break
            rows.append(red)
            combos.append(comb)
            cur = [sum(M[i][j] * cur[j] for j in range(n)) for i in range(n)]
        assert local is not None
        f = _pdivmod(_pmul(f, local), _pgcd(f, local))[0]
    return _pmonic(f)


def _peval_is_zero(p, M):
    return is_zero_matrix(_peval_matrix(p, M))


def squarefree_part(f):
    return _pdivmod(f, _pgcd(f, _pderiv(f)))[0]


@dataclass
class JordanPair:
    """Additive Jordan decomposition: input = S + N, S semisimple (over
    the algebraic closure), N nilpotent, both polynomials in the input."""

    S: list
    N: list


def jordan_chevalley(M) -> JordanPair:
    """Jordan-Chevalley decomposition of a square rational matrix."""
    n = len(M)
    M = [[Fraction(x) for x in row] for row in M]
    f = minimal_polynomial(M)
    g = squarefree_part(f)
    if len(g) == len(f):
        pair = JordanPair(S=[row[:] for row in M],
                          N=[[Fraction(0)] * n for _ in range(n)])
        _validate_pair(M, pair)
        return pair
    a = [Fraction(0), Fraction(1)]  # the polynomial t
    gd = _pderiv(g)
    converged = False
    for _ in range(len(f) + 2):
        ga = _pcompose_mod(g, a, f)
        if not ga:
            converged = True
            break
        u = _pinvmod(_pcompose_mod(gd, a, f), f)
        a = _pmod(_padd(a, _pscale(_pmul(ga, u), Fraction(-1))), f)
    if not converged:
        raise ArithmeticError("Newton iteration failed to converge")
    S = _peval_matrix(a, M)
    N = mat_sub(M, S)
    pair = JordanPair(S=S, N=N)
    _validate_pair(M, pair)
    return pair


def _validate_pair(M, pair):
    assert is_zero_matrix(commutator(pair.S, pair.N)), "S and N must commute"
    assert is_zero_matrix(commutator(pair.S, M)), "S must commute with M"
    assert is_nilpotent(pair.N), "N must be nilpotent"
    fS = minimal_polynomial(pair.S)
    assert len(squarefree_part(fS)) == len(fS), "minpoly of S must be squarefree"


def is_nilpotent(M) -> bool:
    n = len(M)
    if n == 0:
        return True
    P = M
    e = 1
    while e < n:
        P = mat_mul(P, P)
        e *= 2
        if is_zero_matrix(P):
            return True
    return is_zero_matrix(P)


# ---------------------------------------------------------------------------
# nilpotent subspace of a commuting family
# ---------------------------------------------------------------------------

def _independent_subset(mats):
    """Indices of a maximal independent subfamily (by incremental rref)."""
    rows, keep = [], []
    for idx, M in enumerate(mats):
        red = [x for row in M for x in row]
        for r in rows:
            p = next((i for i, x in enumerate(r) if x), None)
            if p is not None and red[p]:
                fac = red[p] / r[p]
                red = [a - fac * b for a, b in zip(red, r)]
        if any(red):
            rows.append(red)
            keep.append(idx)
    return keep


def _primitive_int_matrix(M):
    """(P, lam) with P a primitive integer matrix and P = lam * M."""
    import math
    den = 1
    for row in M:
        for x in row:
            fx = Fraction(x)
            den = den * fx.denominator // math.gcd(den, fx.denominator)
    P = [[int(Fraction(x) * den) for x in row] for row in M]
    g = 0
    for row in P:
        for x in row:
            g = math.gcd(g, x)
    if g > 1:
        P = [[x // g for x in row] for row in P]
        return P, Fraction(den, g)
    return P, Fraction(den)


def _int_matmul(A, B):
    n = len(A)
    Bt = list(zip(*B))
    return [[sum(a * b for a, b in zip(row, col) if a and b) for col in Bt]
            for row in A]


def _associative_closure(mats):
    """Basis of the (non-unital) associative algebra generated by mats
    (integer matrices; reduction is fraction-free)."""
    import math
    basis, rows = [], []

    def try_add(M):
        red = [x for row in M for x in row]
        for r in rows:
            p = next((i for i, x in enumerate(r) if x), None)
            if p is not None and red[p]:
                rp, vp = r[p], red[p]
                red = [rp * a - vp * b for a, b in zip(red, r)]
            g = 0
            for x in red:
                g = math.gcd(g, x)
                if g == 1:
                    break
            if g > 1:
                red = [x // g for x in red]
        if any(red):
            rows.append(red)
            basis.append(M)
            return True
        return False

    frontier = []
    for M in mats:
        if try_add(M):
            frontier.append(M)
    gens = list(basis)
    while frontier:
        new = []
        for A in frontier:
            for G in gens:
                P = _int_matmul(A, G)
                if try_add(P):
                    new.append(P)
        frontier = new
    return basis


def nilpotent_subspace(family):
    """Nilpotent part of the span of a commuting matrix family.

    Returns (dim, mats, coeffs): a basis of {X in span : X nilpotent}
    both as matrices and as coefficient vectors over the input family.
    That set equals the image of the (linear) nilpotent-part projection
    whenever the span is an algebraic Lie algebra.
    """
    m = len(family)
    if not family:
        return 0, [], []
    scaled, factors = [], []
    for M in family:
        P, lam = _primitive_int_matrix(M)
        scaled.append(P)
        factors.append(lam)
    for i in range(m):
        for j in range(i + 1, m):
            AB = _int_matmul(scaled[i], scaled[j])
            BA = _int_matmul(scaled[j], scaled[i])
            if AB != BA:
                raise DomainError(
                    f"family members {i} and {j} do not commute")
    closure = _associative_closure(scaled)
    # conditions tr(X Y) = 0 over all Y in the closure, X in the span
    if closure:
        raw = kernel([[_trace_product(X, Y) for X in scaled]
                      for Y in closure])
    else:  # the span is {0}
        raw = [[Fraction(i == j) for i in range(m)] for j in range(m)]
    mats = []
    for cv in raw:
        n = len(scaled[0])
        M = [[0] * n for _ in range(n)]
        for c, F in zip(cv, scaled):
            if c:
                ci = int(c)
                for r in range(n):
                    Fr = F[r]
                    Mr = M[r]
                    for s in range(n):
                        if Fr[s]:
                            Mr[s] += ci * Fr[s]
        assert is_nilpotent(M)
        mats.append([[Fraction(x) for x in row] for row in M])
    # the family may be dependent; the reported dimension is that of the
    # nilpotent subspace itself
    dim = rank([[x for row in M for x in row] for M in mats]) if mats else 0
    # coefficients over the *input* family (undo the primitive scaling)
    coeffs = [[c * lam for c, lam in zip(cv, factors)] for cv in raw]
    return dim, mats, coeffs


def _trace_product(X, Y):
    n = len(X)
    return sum(X[i][j] * Y[j][i] for i in range(n) for j in range(n)
               if X[i][j] and Y[j][i])


def nilpotent_subspace_via_jordan(family):
    """Reference route: span of the nilpotent parts N(X_i) (valid for
    algebraic spans); used to cross-check nilpotent_subspace."""
    mats = [jordan_chevalley(M).N for M in family]
    flat = [[x for row in M for x in row] for M in mats]
    return (rank(flat) if flat else 0), mats


def _span_contains_all(container_mats, member_mats):
    """True iff span(member_mats) is contained in span(container_mats)."""
    base = [[x for row in M for x in row] for M in container_mats]
    r0 = rank(base) if base else 0
    for M in member_mats:
        v = [x for row in M for x in row]
        if any(v) and rank(base + [v]) > r0:
            return False
    return True


# ---------------------------------------------------------------------------
# unipotent radical of a stabilizer, defect, rank, quasi-reductivity
# ---------------------------------------------------------------------------

def _require_realization(L):
    if L.realization is None:
        raise CapabilityError(
            "operation requires a matrix realization; this algebra has none")


def solvable_radical(sub: Subalgebra) -> Subalgebra:
    """Solvable radical of a realized subalgebra by the trace-form
    criterion: {X : tr(XY) = 0 for all Y in the derived algebra}."""
    L = sub.parent
    _require_realization(L)
    if sub.dim == 0:
        return Subalgebra(L, [])
    derived = []
    for i in range(sub.dim):
        for j in range(i + 1, sub.dim):
            w = L.bracket_vec(sub.basis[i], sub.basis[j])
            if any(w):
                derived.append(w)
    if not derived:
        return sub
    dmats = [L.realize(v) for v in derived]
    smats = sub.realized()
    T = [[_trace_product(D, X) for X in smats] for D in dmats]
    coeffs = kernel(T)
    basis = [[sum(cv[t] * sub.basis[t][c] for t in range(sub.dim))
              for c in range(L.dim)] for cv in coeffs]
    return Subalgebra(L, basis)


def unipotent_radical(sub: Subalgebra):
    """(dim, matrices) of the unipotent radical of a realized subalgebra.

    Supported shapes: abelian subalgebras, subalgebras whose trace-form
    solvable radical is abelian, and solvable radicals all of whose basis
    elements are nilpotent (then the radical is its own unipotent part).
    Anything else raises UnsupportedFormError.
    """
    L = sub.parent
    _require_realization(L)
    if sub.dim == 0:
        return 0, []
    if sub.is_abelian():
        dim, mats, _ = nilpotent_subspace(sub.realized())
        return dim, mats
    rad = solvable_radical(sub)
    if rad.is_abelian():
        dim, mats, _ = nilpotent_subspace(rad.realized())
        return dim, mats
    rmats = rad.realized()
    if all(is_nilpotent(M) for M in rmats):
        return rad.dim, rmats
    raise UnsupportedFormError(
        "stabilizer has a non-abelian solvable radical with semisimple "
        "directions; unipotent-radical extraction is not supported here")


def dim_unipotent_center(L: LieAlgebra) -> int:
    """Dimension of the nilpotent part of the (realized) center."""
    _require_realization(L)
    z = center(L)
    if z.dim == 0:
        return 0
    dim, _, _ = nilpotent_subspace(z.realized())
    return dim


def defect(L: LieAlgebra, g, cfg: SampleConfig = DEFAULT_CONFIG) -> int:
    """Unipotent defect at a regular form: dim ^u(g(g)) - dim ^u(z).

    Requires a realization and an abelian stabilizer (automatic at
    regular forms)."""
    _require_realization(L)
    stab = stabilizer(L, g)
    if not stab.is_abelian():
        raise UnsupportedFormError(
            "defect is defined at regular forms; this stabilizer is "
            "not abelian")
    u_dim, _, _ = nilpotent_subspace(stab.realized())
    return u_dim - dim_unipotent_center(L)


def _regular_samples(L, cfg, count):
    ind, cert = index_certified(L, cfg)
    target = L.dim - ind
    bound = cfg.bound
    rng = random.Random((cfg.seed * 0x9E3779B97F4A7C15 + 2) % (2 ** 63))
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 24 * count:
            if bound >= cfg.bound * 4:
                raise SamplingError(
                    "could not sample enough regular forms; raise the bound")
            bound *= 4
        g = [Fraction(rng.randint(-bound, bound)) for _ in range(L.dim)]
        if rank(kirillov_form(L, g)) == target:
            out.append(g)
    return ind, cert, bound, out


def generic_defect(L: LieAlgebra, cfg: SampleConfig = DEFAULT_CONFIG) -> int:
    """Minimum defect over cfg.trials verified-regular samples (the defect
    is minimized on the strongly-regular open set)."""
    _require_realization(L)
    if L.dim == 0:
        return 0
    _, _, _, forms = _regular_samples(L, cfg, cfg.trials)
    uz = dim_unipotent_center(L)
    best = None
    for g in forms:
        stab = stabilizer(L, g)
        u_dim, _, _ = nilpotent_subspace(stab.realized())
        d = u_dim - uz
        if best is None or d < best:
            best = d
    return best


def rank_cd(L: LieAlgebra, cfg: SampleConfig = DEFAULT_CONFIG) -> int:
    """Cartan-Duflo rank: dimension of the torus factor of a strongly
    regular stabilizer = dim g(g) - dim ^u(g(g)) at a minimum-defect sample."""
    _require_realization(L)
    if L.dim == 0:
        return 0
    ind, _, _, forms = _regular_samples(L, cfg, cfg.trials)
    best = None
    for g in forms:
        stab = stabilizer(L, g)
        u_dim, _, _ = nilpotent_subspace(stab.realized())
        r = stab.dim - u_dim
        if best is None or r > best:
            best = r
    assert best is not None
    return best


def is_reductive_type(L: LieAlgebra, g) -> bool:
    """True iff every nilpotent element of g(g) is central in L
    (equation ^u(g(g)) contained in the center)."""
    _require_realization(L)
    stab = stabilizer(L, g)
    _, umats = unipotent_radical(stab)
    zmats = center(L).realized()
    return _span_contains_all(zmats, umats)


def is_quasi_reductive(L: LieAlgebra, cfg: SampleConfig = DEFAULT_CONFIG) -> bool:
    """Quasi-reductive iff the generic unipotent defect vanishes."""
    if L.dim == 0:
        return True
    return generic_defect(L, cfg) == 0


def is_prehomogeneous(L: LieAlgebra, cfg: SampleConfig = DEFAULT_CONFIG) -> bool:
    """Generic stabilizer equals the center (index = dim center)."""
    ind, _ = index_certified(L, cfg)
    return ind == center(L).dim


def is_frobenius(L: LieAlgebra, cfg: SampleConfig = DEFAULT_CONFIG) -> bool:
    """Prehomogeneous with zero center (open coadjoint orbit)."""
    ind, _ = index_certified(L, cfg)
    return ind == 0 and center(L).dim == 0


# ---------------------------------------------------------------------------
# analysis report
# ---------------------------------------------------------------------------

@dataclass
class AnalysisReport:
    """Index / rank / defect / quasi-reductivity of one algebra, with the
    sampling metadata needed to reproduce it."""

    index: int
    rank_cd: int
    defect: int
    quasi_reductive: bool
    dim_uz: int
    method: str
    sampling: dict

    def __post_init__(self):
        # exact identity at a strongly regular form
        assert self.index == self.rank_cd + self.defect + self.dim_uz

    def to_json(self):
        return {
            "index": self.index,
            "rank": self.rank_cd,
            "defect": self.defect,
            "qr": self.quasi_reductive,
            "dim_uz": self.dim_uz,
            "method": self.method,
            "seed": self.sampling.get("seed"),
            "trials": self.sampling.get("trials"),
            "sz_bound": self.sampling.get("sz_bound"),
        }


def analyze(L: LieAlgebra, cfg: SampleConfig = DEFAULT_CONFIG,
            method: str = "oracle") -> AnalysisReport:
    """Full first-principles analysis of one algebra (needs a realization)."""
    _require_realization(L)
    if L.dim == 0:
        return AnalysisReport(0, 0, 0, True, 0, method,
                              {"seed": cfg.seed, "trials": cfg.trials,
                               "bound": cfg.bound, "sz_bound": "0"})
    ind, cert, used_bound, forms = _regular_samples(L, cfg, cfg.trials)
    uz = dim_unipotent_center(L)
    best_defect = None
    for g in forms:
        stab = stabilizer(L, g)
        u_dim, _, _ = nilpotent_subspace(stab.realized())
        d = u_dim - uz
        if best_defect is None or d < best_defect:
            best_defect = d
    rk = ind - best_defect - uz
    return AnalysisReport(
        index=ind, rank_cd=rk, defect=best_defect,
        quasi_reductive=(best_defect == 0), dim_uz=uz, method=method,
        sampling={"seed": cfg.seed, "trials": cfg.trials, "bound": used_bound,
                  "sz_bound": format_rat(cert.sz_bound)})
