"""Constructors: bilinear forms, flags, so/sp/gl, flag stabilizers inside
gl(V)(xi), parabolic subalgebras of so(E), Dynkin root-subset translations
and the example zoo.

Conventions fixed once for reproducibility (entries included):

* hyperbolic basis of so(q): e_1..e_s, f_1..f_s (plus u with B(u,u) = 1
  when q is odd), B(e_i, f_j) = delta_ij; all standard flags live on
  e-spans, except the second maximal isotropic of series D which is
  span(e_1..e_{n-1}, f_n);
* so(E) basis: u /\ v over ordered ambient pairs, with
  u/\v (x) = B(x,u) v - B(x,v) u;
* gl(V)(xi) basis: u (.) v over ordered pairs, with
  u(.)v (x) = xi(u,x) v + xi(v,x) u, plus the scalar on ker(xi) when
  dim V is odd; the canonical alternating form pairs consecutive
  coordinates, xi = sum e*_{2i-1} /\ e*_{2i}.

Structure constants are assembled from the bracket identities of these
symbols and validated against literal (sparse) matrix commutators at
construction, so Jacobi holds by associativity.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactlin import identity, invert, kernel, mat_mul, rank, rref, transpose
from .liealg import (
    DomainError,
    LieAlgebra,
    from_matrices,
    from_structure_constants,
)


# ---------------------------------------------------------------------------
# flags and bilinear forms
# ---------------------------------------------------------------------------

@dataclass
class Flag:
    """Increasing chain of subspaces of K^ambient_dim.

    bases[i] is a list of column vectors spanning the i-th subspace;
    nesting and dimensions are verified.
    """

    ambient_dim: int
    dims: tuple
    bases: list

    def __post_init__(self):
        self.dims = tuple(self.dims)
        if list(self.dims) != sorted(set(self.dims)):
            raise DomainError("flag dimensions must be strictly increasing")
        if self.dims and (self.dims[0] < 1 or self.dims[-1] > self.ambient_dim):
            raise DomainError("flag dimensions out of range")
        if len(self.bases) != len(self.dims):
            raise DomainError("one basis per flag step required")
        prev = []
        for d, basis in zip(self.dims, self.bases):
            if len(basis) != d or any(len(v) != self.ambient_dim for v in basis):
                raise DomainError("flag basis has wrong shape")
            if rank(basis) != d:
                raise DomainError("flag basis not independent")
            if prev and rank(prev + basis) != d:
                raise DomainError("flag subspaces are not nested")
            prev = basis

    @classmethod
    def coordinate(cls, ambient_dim, dims):
        """Flag of spans of the first d_i standard basis vectors."""
        bases = [[_unit(ambient_dim, k) for k in range(d)] for d in dims]
        return cls(ambient_dim, tuple(dims), bases)

    def coordinate_positions(self):
        """Per step, the set of coordinate positions when every basis
        vector is (a multiple of) a standard unit vector; None otherwise."""
        out = []
        for basis in self.bases:
            positions = set()
            for v in basis:
                nz = [i for i, x in enumerate(v) if x]
                if len(nz) != 1:
                    return None
                positions.add(nz[0])
            out.append(positions)
        return out


def _unit(n, k):
    return [Fraction(i == k) for i in range(n)]


@dataclass
class BilForm:
    """Bilinear form by its Gram matrix; kind is checked against symmetry."""

    kind: str  # "symmetric" | "alternating"
    gram: list

    def __post_init__(self):
        n = len(self.gram)
        sgn = 1 if self.kind == "symmetric" else -1
        for i in range(n):
            if self.kind == "alternating" and self.gram[i][i] != 0:
                raise DomainError("alternating form needs zero diagonal")
            for j in range(n):
                if self.gram[i][j] != sgn * self.gram[j][i]:
                    raise DomainError(f"gram matrix is not {self.kind}")

    @property
    def dim(self):
        return len(self.gram)

    def value(self, u, v):
        return sum(ui * sum(gij * vj for gij, vj in zip(row, v))
                   for ui, row in zip(u, self.gram))

    def restriction_gram(self, vectors):
        return [[self.value(u, v) for v in vectors] for u in vectors]

    def is_nondegenerate(self):
        return rank(self.gram) == self.dim


def _canonical_alternating_gram(d):
    G = [[Fraction(0)] * d for _ in range(d)]
    for i in range(0, d - 1, 2):
        G[i][i + 1] = Fraction(1)
        G[i + 1][i] = Fraction(-1)
    return G


def generic_alternating_form(flag: Flag):
    """Alternating form generic relative to the flag, plus the adapted basis.

    In the adapted basis the form pairs consecutive vectors
    (xi = sum e*_{2i-1} /\\ e*_{2i} over the whole ambient space), so for
    coordinate flags the Gram matrix is the canonical pattern itself.
    """
    n = flag.ambient_dim
    adapted = []
    rows = []  # incremental elimination for independence

    def try_add(v):
        red = list(v)
        for r in rows:
            p = next((i for i, x in enumerate(r) if x), None)
            if p is not None and red[p]:
                fac = red[p] / r[p]
                red = [a - fac * b for a, b in zip(red, r)]
        if any(red):
            rows.append(red)
            adapted.append(list(v))
            return True
        return False

    for basis in flag.bases:
        for v in basis:
            try_add(v)
    for k in range(n):
        try_add(_unit(n, k))
    assert len(adapted) == n
    A = [[adapted[c][r] for c in range(n)] for r in range(n)]
    if all(adapted[c][r] == (1 if r == c else 0)
           for c in range(n) for r in range(n)):
        G = _canonical_alternating_gram(n)
    else:
        Ainv = invert(A)
        G = mat_mul(transpose(Ainv),
                    mat_mul(_canonical_alternating_gram(n), Ainv))
    xi = BilForm("alternating", G)
    assert is_generic_form(xi, flag), "construction must satisfy genericity"
    return xi, adapted


def is_generic_form(xi: BilForm, flag: Flag) -> bool:
    """Both genericity clauses: max rank on each step, and trivial
    intersection of each step's xi-orthogonal with the previous step."""
    if xi.kind != "alternating" or xi.dim != flag.ambient_dim:
        raise DomainError("form must be alternating on the flag's ambient space")
    for i, basis in enumerate(flag.bases):
        d = flag.dims[i]
        if rank(xi.restriction_gram(basis)) != 2 * (d // 2):
            return False
        if i > 0:
            # conditions xi(w, v) = 0 for v in the step
            cond = [[sum(xi.gram[r][c] * v[r] for r in range(xi.dim))
                     for c in range(xi.dim)] for v in basis]
            perp = kernel(cond)
            prev = flag.bases[i - 1]
            inter = flag.dims[i - 1] + len(perp) - rank(prev + perp)
            if inter != 0:
                return False
    return True


# ---------------------------------------------------------------------------
# symbol engines: wedge basis of so(E), odot basis of gl(V)(xi)
# ---------------------------------------------------------------------------

class _WedgeEngine:
    """so(E) for the hyperbolic Gram matrix; basis tokens (a, b), a < b."""

    def __init__(self, q):
        self.q = q
        self.s = q // 2
        self.odd = q % 2 == 1

    def partner(self, a):
        if a < self.s:
            return a + self.s
        if a < 2 * self.s:
            return a - self.s
        return a  # B(u, u) = 1

    def pairing(self, a, b):
        return Fraction(1) if b == self.partner(a) else Fraction(0)

    def tokens(self):
        return [(a, b) for a in range(self.q) for b in range(a + 1, self.q)]

    def sparse(self, tok):
        a, b = tok
        out = {}
        out[(b, self.partner(a))] = out.get((b, self.partner(a)), Fraction(0)) + 1
        out[(a, self.partner(b))] = out.get((a, self.partner(b)), Fraction(0)) - 1
        return {k: v for k, v in out.items() if v}

    def bracket(self, t1, t2):
        a, b = t1
        c, d = t2
        raw = [(self.pairing(a, c), (b, d)), (self.pairing(a, d), (c, b)),
               (-self.pairing(b, c), (a, d)), (self.pairing(b, d), (a, c))]
        return _normalize_terms(raw, antisym=True)

    def name(self, a):
        if a < self.s:
            return f"e{a+1}"
        if a < 2 * self.s:
            return f"f{a-self.s+1}"
        return "u"

    def label(self, tok):
        return f"{self.name(tok[0])}^{self.name(tok[1])}"


class _OdotEngine:
    """gl(V)(xi) for the canonical consecutive-pairing alternating form;
    tokens ('s', a, b) with a <= b, plus ('E',) when dim V is odd."""

    def __init__(self, d):
        self.d = d
        self.odd = d % 2 == 1

    def partner(self, a):
        if self.odd and a == self.d - 1:
            return None
        return a + 1 if a % 2 == 0 else a - 1

    def pairing(self, a, b):
        if self.partner(a) != b or b is None:
            return Fraction(0)
        return Fraction(1) if a % 2 == 0 else Fraction(-1)

    def tokens(self):
        toks = [("s", a, b) for a in range(self.d) for b in range(a, self.d)
                if not (self.odd and a == b == self.d - 1)]
        if self.odd:
            toks.append(("E",))
        return toks

    def sparse(self, tok):
        if tok[0] == "E":
            return {(self.d - 1, self.d - 1): Fraction(1)}
        _, a, b = tok
        out = {}
        pa, pb = self.partner(a), self.partner(b)
        if pa is not None:
            out[(b, pa)] = out.get((b, pa), Fraction(0)) + self.pairing(a, pa)
        if pb is not None:
            out[(a, pb)] = out.get((a, pb), Fraction(0)) + self.pairing(b, pb)
        return {k: v for k, v in out.items() if v}

    def bracket(self, t1, t2):
        if t1[0] == "E" and t2[0] == "E":
            return []
        if t1[0] == "E" or t2[0] == "E":
            sgn = 1 if t1[0] == "E" else -1
            tok = t2 if t1[0] == "E" else t1
            _, a, b = tok
            mult = (a == self.d - 1) + (b == self.d - 1)
            return [(tok, Fraction(sgn * mult))] if mult else []
        _, a, b = t1
        _, c, d = t2
        raw = [(self.pairing(a, c), (b, d)), (self.pairing(a, d), (b, c)),
               (self.pairing(b, c), (a, d)), (self.pairing(b, d), (a, c))]
        raw = [(coef, ("s", min(p), max(p))) for coef, p in raw]
        if self.odd:
            raw = [(coef, tok) for coef, tok in raw
                   if tok[1:] != (self.d - 1, self.d - 1)]
        return _normalize_terms(raw, antisym=False)

    def label(self, tok):
        if tok[0] == "E":
            return "h0"
        return f"v{tok[1]+1}.v{tok[2]+1}"


def _normalize_terms(raw, antisym):
    acc = {}
    for coef, p in raw:
        if not coef:
            continue
        if antisym:
            a, b = p
            if a == b:
                continue
            if a > b:
                a, b = b, a
                coef = -coef
            p = (a, b)
        acc[p] = acc.get(p, Fraction(0)) + coef
    return [(tok, c) for tok, c in acc.items() if c]


def _sparse_commutator(A, B):
    out = {}
    for (r, c), v in A.items():
        for (r2, c2), w in B.items():
            if c == r2:
                out[(r, c2)] = out.get((r, c2), Fraction(0)) + v * w
            if c2 == r:
                out[(r2, c)] = out.get((r2, c), Fraction(0)) - v * w
    return {k: v for k, v in out.items() if v}


def _assemble(engine, tokens, labels, ambient):
    """LieAlgebra from selected engine tokens: structure constants from the
    bracket identities, realization from the sparse matrices, validated
    entry by entry against literal commutators."""
    index = {t: i for i, t in enumerate(tokens)}
    sparse = [engine.sparse(t) for t in tokens]
    m = len(tokens)
    brackets = {}
    for i in range(m):
        for j in range(i + 1, m):
            terms = {}
            for tok, c in engine.bracket(tokens[i], tokens[j]):
                if tok not in index:
                    raise AssertionError(
                        f"selection not closed under bracket: {tok}")
                terms[index[tok]] = terms.get(index[tok], Fraction(0)) + c
            terms = {k: c for k, c in terms.items() if c}
            expect = _sparse_commutator(sparse[i], sparse[j])
            got = {}
            for k, c in terms.items():
                for pos, v in sparse[k].items():
                    got[pos] = got.get(pos, Fraction(0)) + c * v
            if expect != {k: v for k, v in got.items() if v}:
                raise AssertionError(
                    f"structure constants disagree with commutator on "
                    f"({tokens[i]}, {tokens[j]})")
            if terms:
                brackets[(i, j)] = terms
    mats = []
    for sp in sparse:
        M = [[Fraction(0)] * ambient for _ in range(ambient)]
        for (r, c), v in sp.items():
            M[r][c] = v
        mats.append(M)
    flat = [[x for row in M for x in row] for M in mats]
    if mats and rank(flat) != m:
        raise AssertionError("selected basis not independent")
    return from_structure_constants(brackets, labels, mats, _skip_checks=True)


# ---------------------------------------------------------------------------
# classical algebras
# ---------------------------------------------------------------------------

@dataclass
class SOData:
    """so(q) together with its hyperbolic basis bookkeeping."""

    algebra: LieAlgebra
    q: int
    s: int
    odd: bool
    gram: list
    engine: _WedgeEngine

    def e_pos(self, i):  # 1-based
        return i - 1

    def f_pos(self, i):
        return self.s + i - 1

    @property
    def u_pos(self):
        return 2 * self.s if self.odd else None


@lru_cache(maxsize=None)
def so_algebra(q: int) -> SOData:
    """so(q) in the hyperbolic basis; dim q(q-1)/2."""
    if q < 3:
        raise DomainError("so(q) needs q >= 3")
    eng = _WedgeEngine(q)
    toks = eng.tokens()
    L = _assemble(eng, toks, [eng.label(t) for t in toks], q)
    gram = [[Fraction(eng.pairing(a, b)) for b in range(q)] for a in range(q)]
    return SOData(algebra=L, q=q, s=eng.s, odd=eng.odd, gram=gram, engine=eng)


@lru_cache(maxsize=None)
def sp_algebra(two_n: int) -> LieAlgebra:
    """sp(2n) for the canonical alternating form; dim n(2n+1)."""
    if two_n < 2 or two_n % 2:
        raise DomainError("sp needs a positive even dimension")
    eng = _OdotEngine(two_n)
    toks = eng.tokens()
    return _assemble(eng, toks, [eng.label(t) for t in toks], two_n)


@lru_cache(maxsize=None)
def gl_algebra(n: int) -> LieAlgebra:
    """gl(n) on matrix units; dim n^2."""
    if n < 1:
        raise DomainError("gl(n) needs n >= 1")
    toks = [(a, b) for a in range(n) for b in range(n)]
    index = {t: i for i, t in enumerate(toks)}
    brackets = {}
    for i, (a, b) in enumerate(toks):
        for j in range(i + 1, len(toks)):
            c, d = toks[j]
            terms = {}
            if b == c:
                terms[index[(a, d)]] = terms.get(index[(a, d)], Fraction(0)) + 1
            if d == a:
                terms[index[(c, b)]] = terms.get(index[(c, b)], Fraction(0)) - 1
            terms = {k: v for k, v in terms.items() if v}
            if terms:
                brackets[(i, j)] = terms
    mats = []
    for a, b in toks:
        M = [[Fraction(0)] * n for _ in range(n)]
        M[a][b] = Fraction(1)
        mats.append(M)
    labels = [f"E{a+1}{b+1}" for a, b in toks]
    return from_structure_constants(brackets, labels, mats)


# ---------------------------------------------------------------------------
# flag stabilizers inside gl(V)(xi)  (the algebras of Prop-type censuses)
# ---------------------------------------------------------------------------

def flag_stabilizer_sp(flag: Flag, xi: BilForm = None) -> LieAlgebra:
    """Stabilizer of a flag inside gl(V)(xi), xi alternating of maximal rank.

    With no xi given, the canonical generic form of the flag is used.
    The flag must be generic relative to xi (checked).
    """
    d = flag.ambient_dim
    if xi is None:
        xi, _ = generic_alternating_form(flag)
    if xi.dim != d:
        raise DomainError("form and flag live on different spaces")
    if rank(xi.gram) != 2 * (d // 2):
        raise DomainError("xi must have maximal rank on the ambient space")
    if not is_generic_form(xi, flag):
        raise DomainError("flag is not generic relative to xi")
    positions = flag.coordinate_positions()
    if positions is not None and xi.gram == _canonical_alternating_gram(d):
        eng = _OdotEngine(d)
        toks = [t for t in eng.tokens()
                if _stabilizes(eng.sparse(t), positions)]
        return _assemble(eng, toks, [eng.label(t) for t in toks], d)
    return _flag_stabilizer_general(flag, xi)


def _stabilizes(sparse, position_sets):
    for S in position_sets:
        for (r, c) in sparse:
            if c in S and r not in S:
                return False
    return True


def _flag_stabilizer_general(flag, xi):
    d = flag.ambient_dim
    G = xi.gram
    conds = []
    # invariance of xi: (X^t G + G X)[a][b] = 0
    for a in range(d):
        for b in range(d):
            row = [Fraction(0)] * (d * d)
            for i in range(d):
                row[i * d + a] += G[i][b]
                row[i * d + b] += G[a][i]
            conds.append(row)
    conds.extend(_flag_condition_rows(flag))
    vecs = kernel(conds)
    mats = [[v[r * d:(r + 1) * d] for r in range(d)] for v in vecs]
    return from_matrices(mats)


def _flag_condition_rows(flag):
    d = flag.ambient_dim
    rows = []
    for basis in flag.bases:
        ann = kernel(basis)  # w with w . v = 0 for all v in the step
        for w in ann:
            for v in basis:
                row = [Fraction(0)] * (d * d)
                for r in range(d):
                    if w[r]:
                        for c in range(d):
                            if v[c]:
                                row[r * d + c] += w[r] * v[c]
                rows.append(row)
    return rows


# ---------------------------------------------------------------------------
# parabolic subalgebras of so(E)
# ---------------------------------------------------------------------------

def parabolic_so(q: int, flag) -> LieAlgebra:
    """Stabilizer p of a flag of B-isotropic subspaces inside so(q).

    flag may be a Flag or a sequence of dimensions (then the flag is the
    chain of e-spans). Every flag subspace must be isotropic for B.
    """
    so = so_algebra(q)
    if not isinstance(flag, Flag):
        dims = tuple(flag)
        if dims and dims[-1] > q // 2:
            raise DomainError("isotropic subspaces have dimension <= q/2")
        flag = Flag.coordinate(q, dims)
    for basis in flag.bases:
        for u in basis:
            for v in basis:
                if sum(ui * sum(gr * vj for gr, vj in zip(row, v))
                       for ui, row in zip(u, so.gram)) != 0:
                    raise DomainError("flag subspace is not isotropic for B")
    positions = flag.coordinate_positions()
    if positions is not None:
        eng = so.engine
        toks = [t for t in eng.tokens()
                if _stabilizes(eng.sparse(t), positions)]
        return _assemble(eng, toks, [eng.label(t) for t in toks], q)
    # general flags: solve inside the realized so(q)
    mats = so.algebra.realization
    conds = []
    for row in _flag_condition_rows(flag):
        conds.append([sum(row[r * q + c] * M[r][c]
                          for r in range(q) for c in range(q))
                      for M in mats])
    coeffs = kernel(conds) if conds else identity(so.algebra.dim)
    sub = []
    for cv in coeffs:
        M = [[Fraction(0)] * q for _ in range(q)]
        for c, Mk in zip(cv, mats):
            if c:
                for r in range(q):
                    for s in range(q):
                        if Mk[r][s]:
                            M[r][s] += c * Mk[r][s]
        sub.append(M)
    return from_matrices(sub)


# ---------------------------------------------------------------------------
# root subsets (series B and D) and their flags
# ---------------------------------------------------------------------------

PLUS, MINUS = "+", "-"


@dataclass(frozen=True)
class ParabolicSpec:
    """Standard parabolic of so(q) by its simple-root subset.

    series B: q = 2n+1, subsets of {1..n}; series D: q = 2n, subsets of
    {1..n-2, n+, n-}. Numeric n-1 is rejected for series D: the
    stabilizer of F_{n-1} is the parabolic of the pair {n+, n-}.
    """

    series: str
    n: int
    root_set: frozenset

    def __post_init__(self):
        if self.series not in ("B", "D"):
            raise DomainError("series must be B or D")
        if self.series == "B":
            if self.n < 3:
                raise DomainError("series B needs n >= 3")
            bad = [t for t in self.root_set
                   if not isinstance(t, int) or not 1 <= t <= self.n]
            if bad:
                raise DomainError(f"invalid series-B tokens: {bad}")
        else:
            if self.n < 4:
                raise DomainError("series D needs n >= 4")
            for t in self.root_set:
                if t in (PLUS, MINUS):
                    continue
                if isinstance(t, int) and 1 <= t <= self.n - 2:
                    continue
                if isinstance(t, int) and t in (self.n - 1, self.n):
                    raise DomainError(
                        f"series D has no numeric node {t}: the stabilizer "
                        f"of F_{self.n-1} is the parabolic of "
                        f"{{{self.n}+,{self.n}-}}; use the branch tokens")
                raise DomainError(f"invalid series-D token: {t!r}")

    @property
    def q(self):
        return 2 * self.n + 1 if self.series == "B" else 2 * self.n

    def tilde_set(self):
        """Series-D translation to a flag-indexing set without {n+, n-}."""
        if self.series == "B":
            return frozenset(self.root_set)
        if PLUS in self.root_set and MINUS in self.root_set:
            ints = {t for t in self.root_set if isinstance(t, int)}
            return frozenset(ints | {self.n - 1})
        return frozenset(self.root_set)

    def i_zero(self):
        """Integer part of the tilde set (classifier input, series D)."""
        return frozenset(t for t in self.tilde_set() if isinstance(t, int))

    def flag_dims(self):
        tld = self.tilde_set()
        dims = sorted(t for t in tld if isinstance(t, int))
        if PLUS in tld or MINUS in tld:
            dims.append(self.n)
        return tuple(dims)

    def flag(self) -> Flag:
        q, n = self.q, self.n
        bases = []
        dims = []
        tld = self.tilde_set()
        for t in sorted((x for x in tld if isinstance(x, int))):
            bases.append([_unit(q, k) for k in range(t)])
            dims.append(t)
        if PLUS in tld:
            bases.append([_unit(q, k) for k in range(n)])
            dims.append(n)
        elif MINUS in tld:
            vecs = [_unit(q, k) for k in range(n - 1)]
            vecs.append(_unit(q, 2 * n - 1))  # f_n
            bases.append(vecs)
            dims.append(n)
        return Flag(q, tuple(dims), bases)

    def set_str(self):
        ints = sorted(t for t in self.root_set if isinstance(t, int))
        parts = [str(t) for t in ints]
        if PLUS in self.root_set:
            parts.append(f"{self.n}+")
        if MINUS in self.root_set:
            parts.append(f"{self.n}-")
        return ",".join(parts) if parts else "none"


def parse_root_set(series: str, n: int, text: str) -> ParabolicSpec:
    """Parse a subset string like '1,3' or '1,4+,4-' ('none' = empty)."""
    tokens = set()
    text = (text or "").strip()
    if text and text != "none":
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            if part.endswith(("+", "-")):
                sym = part[-1]
                if series != "D":
                    raise DomainError("branch tokens only exist in series D")
                if part[:-1] != str(n):
                    raise DomainError(
                        f"branch token must be {n}+ or {n}-, got {part}")
                tokens.add(sym)
            else:
                tokens.add(int(part))
    return ParabolicSpec(series=series, n=n, root_set=frozenset(tokens))


def parabolic_from_roots(spec: ParabolicSpec):
    """(flag, parabolic subalgebra) of a standard root subset."""
    flag = spec.flag()
    return flag, parabolic_so(spec.q, flag)


def swap_plus_minus(spec: ParabolicSpec) -> ParabolicSpec:
    swapped = {PLUS: MINUS, MINUS: PLUS}
    return ParabolicSpec(spec.series, spec.n, frozenset(
        swapped.get(t, t) for t in spec.root_set))


# ---------------------------------------------------------------------------
# the example zoo
# ---------------------------------------------------------------------------

def _with_adjoint_realization(table, labels):
    L0 = from_structure_constants(table, labels)
    ads = [L0.ad_matrix(i) for i in range(L0.dim)]
    return from_structure_constants(table, labels, ads)


def _heisenberg(e):
    if e < 1:
        raise DomainError("heisenberg needs e >= 1")
    n = e + 2
    labels = [f"x{i+1}" for i in range(e)] + [f"y{i+1}" for i in range(e)] + ["z"]
    mats = []
    for i in range(e):  # x_i = E[0][1+i]
        M = [[Fraction(0)] * n for _ in range(n)]
        M[0][1 + i] = Fraction(1)
        mats.append(M)
    for i in range(e):  # y_i = E[1+i][n-1]
        M = [[Fraction(0)] * n for _ in range(n)]
        M[1 + i][n - 1] = Fraction(1)
        mats.append(M)
    Z = [[Fraction(0)] * n for _ in range(n)]
    Z[0][n - 1] = Fraction(1)
    mats.append(Z)
    table = {(i, e + i): {2 * e: Fraction(1)} for i in range(e)}
    return from_structure_constants(table, labels, mats)


def _odot_mat(d, a, b):
    eng = _OdotEngine(d)
    M = [[Fraction(0)] * d for _ in range(d)]
    for (r, c), v in eng.sparse(("s", a, b)).items():
        M[r][c] = v
    return M


def _sp_heisenberg(r, with_torus):
    """sp(V) (+ K) acting on the Heisenberg algebra of V, realized inside
    sp(2r+2) as the stabilizer of the vector e_{2r} (of the line K e_{2r}
    when the torus factor is present)."""
    if r < 1:
        raise DomainError("need r >= 1")
    d = 2 * r + 2
    a = d - 2  # the distinguished vector
    mats, labels = [], []
    for i in range(2 * r):
        for j in range(i, 2 * r):
            mats.append(_odot_mat(d, i, j))
            labels.append(f"s{i+1}.{j+1}")
    if with_torus:
        mats.append([[-x for x in row] for row in _odot_mat(d, a, a + 1)])
        labels.append("t")
    for i in range(r):
        mats.append(_odot_mat(d, 2 * i, a))
        labels.append(f"x{i+1}")
    for i in range(r):
        mats.append(_odot_mat(d, 2 * i + 1, a))
        labels.append(f"y{i+1}")
    mats.append(_odot_mat(d, a, a))
    labels.append("z")
    return from_matrices(mats, labels)


def _borel_sl2():
    h = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(-1)]]
    x = [[Fraction(0), Fraction(1)], [Fraction(0), Fraction(0)]]
    return from_matrices([h, x], ["h", "x"])


def _f_algebra():
    h = [[Fraction(1), 0, 0], [0, Fraction(-1), 0], [0, 0, Fraction(0)]]
    x = [[0, Fraction(1), 0], [0, 0, 0], [0, 0, 0]]
    e = [[0, 0, Fraction(1)], [0, 0, 0], [0, 0, 0]]
    f = [[0, 0, 0], [0, 0, Fraction(1)], [0, 0, 0]]
    mats = [[[Fraction(v) for v in row] for row in M] for M in (h, x, e, f)]
    return from_matrices(mats, ["h", "x", "e", "f"])


def _bh5():
    d = 4
    h = [[-x for x in row] for row in _odot_mat(d, 0, 1)]
    x = [[v / 2 for v in row] for row in _odot_mat(d, 0, 0)]
    e = _odot_mat(d, 0, 2)
    f = _odot_mat(d, 1, 2)
    z = _odot_mat(d, 2, 2)
    return from_matrices([h, x, e, f, z], ["h", "x", "e", "f", "z"])


def _borel_sl3():
    th = Fraction(1, 3)
    h1 = [[4 * th, 0, 0], [0, -2 * th, 0], [0, 0, -2 * th]]
    h2 = [[2 * th, 0, 0], [0, 2 * th, 0], [0, 0, -4 * th]]
    x1 = [[0, Fraction(1), 0], [0, 0, 0], [0, 0, 0]]
    x2 = [[0, 0, 0], [0, 0, Fraction(1)], [0, 0, 0]]
    z = [[0, 0, Fraction(1)], [0, 0, 0], [0, 0, 0]]
    mats = [[[Fraction(v) for v in row] for row in M]
            for M in (h1, h2, x1, x2, z)]
    return from_matrices(mats, ["h1", "h2", "x1", "x2", "z"])


def _ghat():
    labels = ["s", "u", "x", "y", "z"]
    table = {
        (0, 2): {2: Fraction(1)},       # [s, x] = x
        (0, 3): {3: Fraction(1)},       # [s, y] = y
        (0, 4): {4: Fraction(2)},       # [s, z] = 2z
        (1, 2): {3: Fraction(1)},       # [u, x] = y
        (2, 3): {4: Fraction(1)},       # [x, y] = z
    }
    return _with_adjoint_realization(table, labels)


ZOO = {
    "heisenberg": (_heisenberg, ("e",)),
    "sp_heisenberg": (lambda r: _sp_heisenberg(r, False), ("r",)),
    "sp_k_heisenberg": (lambda r: _sp_heisenberg(r, True), ("r",)),
    "borel_sl2": (_borel_sl2, ()),
    "f_algebra": (_f_algebra, ()),
    "bh5": (_bh5, ()),
    "borel_sl3": (_borel_sl3, ()),
    "ghat": (_ghat, ()),
}


def zoo(name: str, **params) -> LieAlgebra:
    """Example algebras by name; see ZOO for names and parameters."""
    if name not in ZOO:
        raise DomainError(
            f"unknown zoo algebra {name!r}; known: {', '.join(sorted(ZOO))}")
    builder, wanted = ZOO[name]
    extra = set(params) - set(wanted)
    missing = set(wanted) - set(params)
    if extra or missing:
        raise DomainError(
            f"zoo({name!r}) takes parameters {wanted}, got {tuple(params)}")
    return builder(**params)
