"""Lie algebras over Q as structure constants with optional matrix realization.

An algebra is stored as antisymmetric structure constants
``brackets[(i, j)] = {k: c}`` for i < j, meaning [X_i, X_j] = sum c X_k,
plus an optional faithful matrix realization.  All invariants
(antisymmetry, Jacobi, realization consistency) are checked at
construction; algebras whose constants were solved from validated matrix
brackets inherit Jacobi from associativity and skip the triple loop.

The coadjoint machinery lives here: Kirillov form (numeric and symbolic),
index with Schwartz-Zippel certificates, stabilizers, regular-form
sampling, unimodularity and the Pfaffian polynomial of a prehomogeneous
algebra.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .exactlin import (
    DEFAULT_CONFIG,
    CapacityError,
    LinMatrix,
    MPoly,
    RankCertificate,
    SampleConfig,
    commutator,
    format_rat,
    generic_rank_certified,
    generic_rank_exact,
    is_zero_matrix,
    kernel,
    mat_eq,
    mat_scale,
    parse_rat,
    pfaffian_poly,
    rank,
    rref,
    shape,
    solve,
)

import random


class ConstructionError(ValueError):
    """Structure-constant table violates a Lie algebra axiom."""


class ClosureError(ValueError):
    """Matrix family is not closed under commutators."""


class SamplingError(RuntimeError):
    """Could not hit the generic locus within the allotted attempts."""


class DomainError(ValueError):
    """Operation applied outside its mathematical domain."""


# ---------------------------------------------------------------------------
# core types
# ---------------------------------------------------------------------------

class LieAlgebra:
    """Immutable Lie algebra given by structure constants.

    Do not call directly; use from_structure_constants / from_matrices /
    the constructors in qrlie.classical.
    """

    def __init__(self, dim, labels, brackets, realization=None,
                 _validated=False):
        assert _validated, "construct via from_structure_constants/from_matrices"
        self.dim = dim
        self.labels = tuple(labels)
        self.brackets = brackets  # {(i, j): {k: Fraction}} with i < j
        self.realization = realization
        self.ambient_dim = len(realization[0]) if realization else None

    def __repr__(self):
        real = f", ambient={self.ambient_dim}" if self.realization else ""
        return f"LieAlgebra(dim={self.dim}{real})"

    def bracket_basis(self, i, j):
        """[X_i, X_j] as {k: coeff}."""
        if i == j:
            return {}
        if i < j:
            return self.brackets.get((i, j), {})
        return {k: -c for k, c in self.brackets.get((j, i), {}).items()}

    def bracket_vec(self, u, v):
        """Bracket of two coordinate vectors, as a coordinate vector."""
        out = [Fraction(0)] * self.dim
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if not vj or i == j:
                    continue
                for k, c in self.bracket_basis(i, j).items():
                    out[k] += ui * vj * c
        return out

    def ad_matrix(self, i):
        """Matrix of ad X_i acting on coordinates."""
        M = [[Fraction(0)] * self.dim for _ in range(self.dim)]
        for j in range(self.dim):
            for k, c in self.bracket_basis(i, j).items():
                M[k][j] = c
        return M

    def ad_trace(self, i):
        return sum(self.bracket_basis(i, j).get(j, Fraction(0))
                   for j in range(self.dim))

    def _sparse_realization(self):
        if getattr(self, "_sparse_real", None) is None:
            self._sparse_real = [
                {(r, s): x for r, row in enumerate(M)
                 for s, x in enumerate(row) if x}
                for M in self.realization]
        return self._sparse_real

    def realize(self, vec):
        """Matrix of a coordinate vector in the realization."""
        if self.realization is None:
            raise DomainError("algebra has no matrix realization")
        n = self.ambient_dim
        M = [[Fraction(0)] * n for _ in range(n)]
        for i, c in enumerate(vec):
            if not c:
                continue
            for (r, s), x in self._sparse_realization()[i].items():
                M[r][s] += c * x
        return M


@dataclass
class Subalgebra:
    """Subalgebra of a parent algebra, spanned by coordinate vectors."""

    parent: LieAlgebra
    basis: list

    def __post_init__(self):
        if self.basis:
            if rank(self.basis) != len(self.basis):
                raise ConstructionError("subalgebra basis not independent")
            self._assert_closed()

    def _assert_closed(self):
        m = len(self.basis)
        for i in range(m):
            for j in range(i + 1, m):
                w = self.parent.bracket_vec(self.basis[i], self.basis[j])
                if any(w) and rank(self.basis + [w]) > m:
                    raise ConstructionError(
                        "subalgebra not closed under bracket")

    @property
    def dim(self):
        return len(self.basis)

    def contains(self, vec):
        if not any(vec):
            return True
        return rank(self.basis + [vec]) == len(self.basis)

    def is_abelian(self):
        m = len(self.basis)
        return all(not any(self.parent.bracket_vec(self.basis[i], self.basis[j]))
                   for i in range(m) for j in range(i + 1, m))

    def realized(self):
        return [self.parent.realize(v) for v in self.basis]


# the linear form g in g*: a plain coefficient vector in the dual basis.
LinearForm = list


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def _normalize_table(table, dim):
    """Accept {(i,j): {k: c}} or [[i, j, [(k, c), ...]], ...]; return the
    canonical i<j dict, raising on antisymmetry violations."""
    raw = {}
    items = table.items() if isinstance(table, dict) else (
        ((i, j), dict(terms)) for i, j, terms in table)
    for (i, j), terms in items:
        if not (0 <= i < dim and 0 <= j < dim):
            raise ConstructionError(f"index out of range in bracket ({i},{j})")
        terms = {k: Fraction(c) for k, c in dict(terms).items() if Fraction(c)}
        for k in terms:
            if not 0 <= k < dim:
                raise ConstructionError(f"index out of range in bracket ({i},{j})")
        if i == j:
            if terms:
                raise ConstructionError(f"[X_{i}, X_{i}] must vanish")
            continue
        key, sgn = ((i, j), 1) if i < j else ((j, i), -1)
        stored = {k: sgn * c for k, c in terms.items()}
        if key in raw:
            if raw[key] != stored:
                raise ConstructionError(
                    f"antisymmetry violated on pair {key}")
        else:
            raw[key] = stored
    return {k: v for k, v in raw.items() if v}


def _check_jacobi(dim, brackets):
    def br(i, j):
        if i == j:
            return {}
        if i < j:
            return brackets.get((i, j), {})
        return {k: -c for k, c in brackets.get((j, i), {}).items()}

    for i in range(dim):
        for j in range(i + 1, dim):
            cij = br(i, j)
            for k in range(j + 1, dim):
                acc = {}
                for l, c in cij.items():
                    for m, d in br(l, k).items():
                        acc[m] = acc.get(m, Fraction(0)) + c * d
                for l, c in br(j, k).items():
                    for m, d in br(l, i).items():
                        acc[m] = acc.get(m, Fraction(0)) + c * d
                for l, c in br(k, i).items():
                    for m, d in br(l, j).items():
                        acc[m] = acc.get(m, Fraction(0)) + c * d
                if any(acc.values()):
                    raise ConstructionError(
                        f"Jacobi identity fails on basis triple ({i},{j},{k})")


def _check_realization(dim, brackets, mats):
    if len(mats) != dim:
        raise ConstructionError("realization size does not match dim")
    if dim and rank([[x for row in M for x in row] for M in mats]) != dim:
        raise ConstructionError("realization matrices not independent")
    for i in range(dim):
        for j in range(i + 1, dim):
            expect = commutator(mats[i], mats[j])
            got = [[Fraction(0)] * len(expect[0]) for _ in expect]
            for k, c in brackets.get((i, j), {}).items():
                got = [[g + c * x for g, x in zip(gr, xr)]
                       for gr, xr in zip(got, mats[k])]
            if not mat_eq(expect, got):
                raise ConstructionError(
                    f"realization inconsistent with brackets on pair ({i},{j})")


def from_structure_constants(table, labels, realization=None,
                             _skip_checks=False) -> LieAlgebra:
    """Validated Lie algebra from a structure-constant table.

    Jacobi is verified by the full triple loop unless a realization is
    supplied, in which case consistency with matrix commutators implies it.
    """
    labels = tuple(labels)
    dim = len(labels)
    brackets = _normalize_table(table, dim)
    if realization is not None:
        realization = [[[Fraction(x) for x in row] for row in M]
                       for M in realization]
    if not _skip_checks:
        if realization is not None:
            _check_realization(dim, brackets, realization)
        else:
            _check_jacobi(dim, brackets)
    return LieAlgebra(dim, labels, brackets, realization, _validated=True)


class _SpanSolver:
    """Solve coordinates in the span of a fixed matrix family."""

    def __init__(self, mats):
        self.m = len(mats)
        self.flat = [[x for row in M for x in row] for M in mats]
        self.ncols = len(self.flat[0]) if self.flat else 0
        _, piv = rref(self.flat)
        if len(piv) != self.m:
            raise ConstructionError("matrix family not linearly independent")
        self.piv = piv
        # invert the m x m submatrix on pivot coordinates
        from .exactlin import invert
        self.inv = invert([[self.flat[j][c] for j in range(self.m)]
                           for c in piv])

    def coords(self, M):
        b = [x for row in M for x in row]
        bp = [b[c] for c in self.piv]
        x = [sum(self.inv[i][j] * bp[j] for j in range(self.m))
             for i in range(self.m)]
        # verify the candidate actually reproduces M
        for c in range(self.ncols):
            if sum(x[k] * self.flat[k][c] for k in range(self.m)) != b[c]:
                return None
        return x


def from_matrices(mats, labels=None) -> LieAlgebra:
    """Lie algebra spanned by a closed, independent matrix family.

    Structure constants are solved from the matrix brackets, so Jacobi
    holds by associativity; the family becomes the realization.
    """
    mats = [[[Fraction(x) for x in row] for row in M] for M in mats]
    m = len(mats)
    if labels is None:
        labels = [f"X{i+1}" for i in range(m)]
    solver = _SpanSolver(mats)
    brackets = {}
    for i in range(m):
        for j in range(i + 1, m):
            B = commutator(mats[i], mats[j])
            if is_zero_matrix(B):
                continue
            x = solver.coords(B)
            if x is None:
                raise ClosureError(
                    f"bracket of matrices ({i},{j}) falls outside the span")
            terms = {k: c for k, c in enumerate(x) if c}
            if terms:
                brackets[(i, j)] = terms
    return LieAlgebra(m, tuple(labels), brackets, mats, _validated=True)


def direct_sum(L1: LieAlgebra, L2: LieAlgebra) -> LieAlgebra:
    """Direct product of Lie algebras (block realization when both have one)."""
    labels = [f"{l}'" for l in L1.labels] + [f"{l}''" for l in L2.labels]
    brackets = {k: dict(v) for k, v in L1.brackets.items()}
    for (i, j), terms in L2.brackets.items():
        brackets[(i + L1.dim, j + L1.dim)] = {k + L1.dim: c
                                              for k, c in terms.items()}
    realization = None
    if L1.realization is not None and L2.realization is not None:
        n1, n2 = L1.ambient_dim, L2.ambient_dim
        realization = []
        for M in L1.realization:
            realization.append(
                [list(row) + [Fraction(0)] * n2 for row in M]
                + [[Fraction(0)] * (n1 + n2) for _ in range(n2)])
        for M in L2.realization:
            realization.append(
                [[Fraction(0)] * (n1 + n2) for _ in range(n1)]
                + [[Fraction(0)] * n1 + list(row) for row in M])
    return from_structure_constants(brackets, labels, realization,
                                    _skip_checks=True)


# ---------------------------------------------------------------------------
# JSON interchange
# ---------------------------------------------------------------------------

def algebra_to_json(L: LieAlgebra) -> dict:
    struct = [[i, j, [[k, format_rat(c)] for k, c in sorted(terms.items())]]
              for (i, j), terms in sorted(L.brackets.items())]
    doc = {"dim": L.dim, "labels": list(L.labels), "structure": struct}
    if L.realization is not None:
        doc["realization"] = [[[format_rat(x) for x in row] for row in M]
                              for M in L.realization]
    return doc


def algebra_from_json(doc: dict) -> LieAlgebra:
    labels = doc.get("labels") or [f"X{i+1}" for i in range(doc["dim"])]
    if len(labels) != doc["dim"]:
        raise ConstructionError("labels do not match dim")
    table = [[i, j, [(k, parse_rat(c)) for k, c in terms]]
             for i, j, terms in doc["structure"]]
    realization = None
    if doc.get("realization") is not None:
        realization = [[[parse_rat(x) for x in row] for row in M]
                       for M in doc["realization"]]
    return from_structure_constants(table, labels, realization)


def save_algebra(L: LieAlgebra, path):
    with open(path, "w") as fh:
        json.dump(algebra_to_json(L), fh, indent=1)


def load_algebra(path) -> LieAlgebra:
    with open(path) as fh:
        return algebra_from_json(json.load(fh))


# ---------------------------------------------------------------------------
# coadjoint machinery
# ---------------------------------------------------------------------------

def center(L: LieAlgebra) -> Subalgebra:
    """Center of L, via the kernel of the stacked adjoint maps.

    The intersection over k of ker(X -> [X, X_k]) is computed
    incrementally from the sparse structure constants."""
    if L.dim == 0:
        return Subalgebra(L, [])
    K = [[Fraction(i == j) for i in range(L.dim)] for j in range(L.dim)]
    for k in range(L.dim):
        if not K:
            break
        # rows of the map (coords in K) -> [X, X_k], built sparsely
        img = {}
        for t, v in enumerate(K):
            for j, vj in enumerate(v):
                if not vj:
                    continue
                for l, c in L.bracket_basis(j, k).items():
                    key = l
                    row = img.setdefault(key, [Fraction(0)] * len(K))
                    row[t] += vj * c
        rows = [row for row in img.values() if any(row)]
        if not rows:
            continue
        coeffs = kernel(rows)
        K = [[sum(cv[t] * K[t][c] for t in range(len(K)) if cv[t])
              for c in range(L.dim)] for cv in coeffs]
    return Subalgebra(L, K)


def kirillov_form(L: LieAlgebra, g: LinearForm):
    """Matrix of the alternating form (X, Y) -> g([X, Y]) in the basis."""
    n = L.dim
    M = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), terms in L.brackets.items():
        v = Fraction(0)
        for k, c in terms.items():
            if g[k]:
                v += c * Fraction(g[k])
        if v:
            M[i][j] = v
            M[j][i] = -v
    return M


def kirillov_symbolic(L: LieAlgebra) -> LinMatrix:
    """Kirillov form with the linear form symbolic: entries are linear
    polynomials in the dual coordinates, named after the basis labels."""
    variables = tuple(L.labels)
    n = L.dim
    zero = MPoly.zero(variables)
    rows = [[zero for _ in range(n)] for _ in range(n)]
    for (i, j), terms in L.brackets.items():
        p = MPoly(variables, {
            tuple(1 if t == k else 0 for t in range(n)): c
            for k, c in terms.items()})
        rows[i][j] = p
        rows[j][i] = -p
    return LinMatrix(variables, rows)


def index_certified(L: LieAlgebra, cfg: SampleConfig = DEFAULT_CONFIG):
    """(index, rank certificate): ind = dim - generic rank of the Kirillov
    form, sampled per Schwartz-Zippel at cfg.bound."""
    if L.dim == 0:
        return 0, RankCertificate(trials=cfg.trials, bound=cfg.bound,
                                  seed=cfg.seed, ranks=[0], size=0)
    gr, cert = generic_rank_certified(kirillov_symbolic(L), cfg)
    return L.dim - gr, cert


def index(L: LieAlgebra, cfg: SampleConfig = DEFAULT_CONFIG,
          exact: bool = False) -> int:
    """Index of L; with exact=True runs deterministic polynomial elimination."""
    if exact:
        if L.dim == 0:
            return 0
        return L.dim - generic_rank_exact(kirillov_symbolic(L))
    return index_certified(L, cfg)[0]


def stabilizer(L: LieAlgebra, g: LinearForm) -> Subalgebra:
    """Centralizer g(g) of a linear form: the radical of the Kirillov form."""
    if L.dim == 0:
        return Subalgebra(L, [])
    return Subalgebra(L, kernel(kirillov_form(L, g)))


@dataclass
class RegularFormCertificate:
    """Witness that a sampled form achieved the generic Kirillov rank."""

    seed: int
    bound: int
    attempts: int
    achieved_rank: int
    generic_rank: int
    rank_certificate: RankCertificate

    @property
    def ok(self):
        return self.achieved_rank == self.generic_rank

    def to_json(self):
        return {
            "seed": self.seed,
            "bound": self.bound,
            "attempts": self.attempts,
            "achieved_rank": self.achieved_rank,
            "generic_rank": self.generic_rank,
            "sz_bound": format_rat(self.rank_certificate.sz_bound),
        }


def _derived_seed(seed: int, salt: int) -> int:
    return (seed * 0x9E3779B97F4A7C15 + salt) % (2 ** 63)


def sample_regular_form(L: LieAlgebra, cfg: SampleConfig = DEFAULT_CONFIG,
                        max_attempts: int = 12):
    """A linear form whose Kirillov rank equals the generic rank.

    Returns (form, certificate); raises SamplingError when every attempt
    misses the regular locus (retry with a larger bound).
    """
    ind, cert = index_certified(L, cfg)
    target = L.dim - ind
    rng = random.Random(_derived_seed(cfg.seed, 1))
    attempts = 0
    while attempts < max_attempts:
        attempts += 1
        g = [Fraction(rng.randint(-cfg.bound, cfg.bound))
             for _ in range(L.dim)]
        achieved = rank(kirillov_form(L, g)) if L.dim else 0
        if achieved == target:
            return g, RegularFormCertificate(
                seed=cfg.seed, bound=cfg.bound, attempts=attempts,
                achieved_rank=achieved, generic_rank=target,
                rank_certificate=cert)
    raise SamplingError(
        f"no regular form found in {max_attempts} attempts at bound "
        f"{cfg.bound}; raise the bound")


def is_unimodular(L: LieAlgebra) -> bool:
    """True iff every basis adjoint is traceless."""
    return all(L.ad_trace(i) == 0 for i in range(L.dim))


def psi_polynomial(L: LieAlgebra, cfg: SampleConfig = DEFAULT_CONFIG) -> MPoly:
    """Pfaffian polynomial of the Kirillov form on a complement of the center.

    Defined for prehomogeneous algebras (index = dim of the center); the
    complement is the fixed set of coordinate directions complementary to
    the echelonized center, so the result is reproducible bit for bit.
    Comparisons should be made up to a nonzero scalar.
    """
    z = center(L)
    ind, _ = index_certified(L, cfg)
    if ind != z.dim:
        raise DomainError(
            f"algebra is not prehomogeneous (index {ind} != center dim {z.dim})")
    if z.dim:
        _, piv = rref(z.basis)
        compl = [i for i in range(L.dim) if i not in set(piv)]
    else:
        compl = list(range(L.dim))
    two_e = len(compl)
    assert two_e % 2 == 0
    if two_e > 12:
        raise CapacityError(
            f"Pfaffian polynomial guarded at 12 coordinates, got {two_e}")
    sym = kirillov_symbolic(L)
    sub = [[sym.entries[i][j] for j in compl] for i in compl]
    return pfaffian_poly(sub)
