"""Closed-form combinatorics for flag stabilizers and so(q) parabolics.

Everything here depends only on the dimension profile of a flag (or a
Dynkin root subset); the linear-algebra oracle in qrlie.jordan computes
the same quantities from first principles, and the census machinery
cross-validates the two.

Case conventions, fixed in one place so they cannot drift:

* h(V) counts the indices i with both dim V_i and dim V_{i+1} odd,
  1 <= i <= t-1 (the top space V_t included); property P <=> h = 0;
* the reduced flag V' drops the top space exactly when (a) sp-side:
  dim V is odd, (b) so-side: r = dim V_t is odd and 2r = q.
"""

from __future__ import annotations

from dataclasses import dataclass

from .liealg import DomainError
from .classical import MINUS, PLUS, ParabolicSpec


@dataclass(frozen=True)
class FlagProfile:
    """Dimension profile of a flag: strictly increasing positive dims,
    with an optional ambient q for the so-side isotropy bound."""

    dims: tuple
    q: int = None

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        if list(self.dims) != sorted(set(self.dims)):
            raise DomainError("dims must be strictly increasing")
        if self.dims and self.dims[0] < 1:
            raise DomainError("dims must be positive")
        if self.q is not None and self.dims and self.dims[-1] > self.q // 2:
            raise DomainError(
                f"isotropy bound violated: {self.dims[-1]} > {self.q // 2}")


def _dims(p):
    return p.dims if isinstance(p, FlagProfile) else tuple(p)


def h_flag(profile) -> int:
    """Number of consecutive flag steps whose dimensions are both odd."""
    dims = _dims(profile)
    return sum(1 for a, b in zip(dims, dims[1:]) if a % 2 and b % 2)


def satisfies_P(profile) -> bool:
    return h_flag(profile) == 0


def _half_sum(dims):
    prev = 0
    total = 0
    for d in dims:
        total += (d - prev) // 2
        prev = d
    return total


def reduced_flag_sp(profile):
    """V' for the sp-side statement: drop the top space iff dim V is odd."""
    dims = _dims(profile)
    return dims[:-1] if dims and dims[-1] % 2 else dims


def reduced_flag_so(q, profile):
    """V' for the so-side statement: drop the top space iff r odd, 2r = q."""
    dims = _dims(profile)
    if dims and dims[-1] % 2 and 2 * dims[-1] == q:
        return dims[:-1]
    return dims


def index_r_formula(profile) -> int:
    """Index of the stabilizer of a generic flag inside gl(V)(xi); the
    profile must end at dim V."""
    dims = _dims(profile)
    if not dims:
        return 0
    S = _half_sum(dims)
    if dims[-1] % 2 == 0:
        return S
    prev = dims[-2] if len(dims) > 1 else 0
    return S - 1 if prev < dims[-1] - 1 else S + 1


def defect_r_formula(profile) -> int:
    """Generic unipotent defect of the same stabilizer: h of the reduced flag."""
    return h_flag(reduced_flag_sp(profile))


def qr_r_formula(profile) -> bool:
    return defect_r_formula(profile) == 0


def index_p_formula(q: int, profile) -> int:
    """Index of the parabolic of so(q) stabilizing an isotropic flag with
    this dimension profile (the empty profile gives so(q) itself)."""
    if q < 3:
        raise DomainError("so(q) needs q >= 3")
    dims = _dims(profile)
    if dims and dims[-1] > q // 2:
        raise DomainError(
            f"isotropy bound violated: {dims[-1]} > {q // 2}")
    r = dims[-1] if dims else 0
    S = _half_sum(dims)
    if r % 2 == 0:
        return q // 2 - r + S
    if 2 * r < q:
        return (q - 1) // 2 - r + S
    prev = dims[-2] if len(dims) > 1 else 0
    return S - 1 if prev < r - 1 else S + 1


def defect_p_formula(q: int, profile) -> int:
    if q < 3:
        raise DomainError("so(q) needs q >= 3")
    dims = _dims(profile)
    if dims and dims[-1] > q // 2:
        raise DomainError(
            f"isotropy bound violated: {dims[-1]} > {q // 2}")
    return h_flag(reduced_flag_so(q, dims))


def qr_p_formula(q: int, profile) -> bool:
    return defect_p_formula(q, profile) == 0


# ---------------------------------------------------------------------------
# Dynkin root-subset classifiers
# ---------------------------------------------------------------------------

def _has_adjacent_odd_pair(ints) -> bool:
    """True iff the sorted set has two consecutive members both odd (i.e.
    odd j < k in the set with no member strictly between)."""
    s = sorted(ints)
    return any(a % 2 and b % 2 for a, b in zip(s, s[1:]))


def qr_roots_B(n: int, root_set) -> bool:
    """Quasi-reductivity of the standard parabolic of so(2n+1) indexed by
    a subset of {1..n}."""
    spec = ParabolicSpec("B", n, frozenset(root_set))
    return not _has_adjacent_odd_pair(spec.root_set)


def qr_roots_D(n: int, root_set) -> bool:
    """Quasi-reductivity of the standard parabolic of so(2n) indexed by a
    subset of {1..n-2, n+, n-} (branch tokens '+'/'-')."""
    spec = ParabolicSpec("D", n, frozenset(root_set))
    return not _has_adjacent_odd_pair(spec.i_zero())


def tilde(n: int, root_set):
    return ParabolicSpec("D", n, frozenset(root_set)).tilde_set()


def i_zero(n: int, root_set):
    return ParabolicSpec("D", n, frozenset(root_set)).i_zero()


def h_from_root_complement(series: str, n: int, root_set) -> int:
    """Count of connected components [i, j] of the complement of the root
    subset in the Dynkin graph with i, j both even and j <= n-1 (series B)
    resp. j <= n-2 (series D).

    Components touching the series-D branch nodes are never intervals of
    the numeric chain and are not counted.
    """
    spec = ParabolicSpec(series, n, frozenset(root_set))
    if series == "B":
        chain = list(range(1, n + 1))
        limit = n - 1
        branch_open = False
    else:
        chain = list(range(1, n - 1))
        limit = n - 2
        branch_open = (PLUS not in spec.root_set) or (MINUS not in spec.root_set)
    in_comp = [c not in spec.root_set for c in chain]
    count = 0
    k = 0
    while k < len(chain):
        if not in_comp[k]:
            k += 1
            continue
        start = k
        while k + 1 < len(chain) and in_comp[k + 1]:
            k += 1
        i, j = chain[start], chain[k]
        touches_branch = series == "D" and j == n - 2 and branch_open
        if not touches_branch and i % 2 == 0 and j % 2 == 0 and j <= limit:
            count += 1
        k += 1
    return count


def spec_flag_dims(spec: ParabolicSpec):
    """Dimension profile of the isotropic flag attached to a root subset."""
    return spec.flag_dims()


def classify_spec(spec: ParabolicSpec):
    """(index, defect, qr) of the parabolic of a root subset, by formula."""
    dims = spec.flag_dims()
    q = spec.q
    return (index_p_formula(q, dims), defect_p_formula(q, dims),
            qr_p_formula(q, dims))
