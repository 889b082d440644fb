"""Lower-bound certificates for algebraic immunity.

Every certifier here reduces to one fact: a nonzero g of degree e has weight
at least 2**(m - e) on an m-dimensional space. If g vanishes on all but z
points of that space, then g is zero there or 2**(m - e) <= z, i.e.
e >= m - floor(log2 z). The literal threshold tests (wt >= 2**m - 2**(m-d)
gives degree >= d) are exposed as stated; the coverage certifier uses the
sharp form, which implies both the strict and the non-strict readings.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

import numpy as np

from .annihilator import (
    COMPLEMENT_SIDE,
    F_SIDE,
    annihilator_basis,
    exact_ai,
)
from .core import (
    AffineForm,
    AffineSubspace,
    AnfPolynomial,
    BooleanFunction,
    full_mask,
    make_subspace,
    popcount,
    restricted_support_count,
    rotate_mask,
    var_table,
    weight_class_mask,
)

UNBOUNDED = "UNBOUNDED"
DEFAULT_SUBSET_BUDGET = 20_000
DEFAULT_EXACT_LIMIT = 12


class Method(str, enum.Enum):
    THEOREM2 = "THEOREM2"
    COROLLARY1 = "COROLLARY1"
    COROLLARY4 = "COROLLARY4"
    COROLLARY5 = "COROLLARY5"
    COVERAGE = "COVERAGE"


class Symmetry(str, enum.Enum):
    GENERIC = "GENERIC"
    SYMMETRIC = "SYMMETRIC"
    ROTATION = "ROTATION"


class NotBalancedError(ValueError):
    pass


class NotSymmetricError(ValueError):
    pass


class PatternMismatchError(ValueError):
    pass


class SubsetBudgetError(RuntimeError):
    """Raised when a generic coverage enumeration exceeds its subset budget."""


def half_up(n: int) -> int:
    return (n + 1) // 2


def binom(m: int, i: int) -> int:
    if i < 0 or m < 0 or i > m:
        return 0
    return comb(m, i)


def binom_sum(m: int, upper: int) -> int:
    """sum_{i=0}^{upper} C(m, i); empty (0) when upper < 0."""
    return sum(binom(m, i) for i in range(0, upper + 1))


def vanishing_threshold(dim: int, d: int) -> int:
    return (1 << dim) - (1 << (dim - d))


def certified_level(count: int, dim: int, cap: int) -> int:
    """Largest d <= cap such that a function vanishing on ``count`` of the 2**dim points has degree >= d or is zero."""
    z = (1 << dim) - count
    if z <= 0:
        return cap
    return max(0, min(cap, dim - (z.bit_length() - 1)))


def max_level(count: int, dim: int, cap: int) -> int:
    """Largest d <= cap with count >= 2**dim - 2**(dim - d)."""
    best = 0
    for d in range(0, min(cap, dim) + 1):
        if count >= vanishing_threshold(dim, d):
            best = d
    return best


@dataclass(frozen=True)
class AiCertificate:
    bound: int
    method: Method
    n: int
    evidence: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not 0 <= self.bound <= half_up(self.n):
            raise ValueError(f"bound {self.bound} outside 0..ceil(n/2) for n={self.n}")

    def to_dict(self) -> dict:
        return {
            "method": self.method.value,
            "bound": self.bound,
            "n": self.n,
            "evidence": self.evidence,
        }


# ---------------------------------------------------------------------------
# Theorem-level checks


def theorem2_degree_bound(f: BooleanFunction):
    """Largest d with wt(f) >= 2**n - 2**(n-d): every annihilator of f has degree >= d."""
    n = f.n
    w = f.weight
    if w == 1 << n:
        return UNBOUNDED
    return max_level(w, n, n)


def theorem2_certificate(f: BooleanFunction) -> AiCertificate:
    per_side = {}
    for side, g in ((F_SIDE, f), (COMPLEMENT_SIDE, f.complement())):
        per_side[side] = theorem2_degree_bound(g)
    finite = [v for v in per_side.values() if v != UNBOUNDED]
    bound = min(min(finite), half_up(f.n)) if finite else 0
    evidence = {"weight": f.weight, "side_bounds": per_side}
    if f.is_balanced():
        evidence["note"] = "vacuous for balanced input beyond excluding constant annihilators"
    return AiCertificate(bound, Method.THEOREM2, f.n, evidence)


@dataclass(frozen=True)
class SubspaceDichotomy:
    """Either every nonzero annihilator of ``side`` has degree >= level, or it vanishes on the subspace."""

    subspace: AffineSubspace
    side: str
    level: int
    restricted_weight: int
    condition_met: bool

    @property
    def threshold(self) -> int:
        return vanishing_threshold(self.subspace.dim, self.level)

    def to_dict(self) -> dict:
        return {
            "constraints": [[m, b] for m, b in self.subspace.constraints],
            "side": self.side,
            "level": self.level,
            "restricted_weight": self.restricted_weight,
            "threshold": self.threshold,
            "condition_met": self.condition_met,
        }


def theorem3_dichotomy(f: BooleanFunction, L: AffineSubspace, side: str, d: int) -> SubspaceDichotomy:
    if not 0 <= d <= L.dim:
        raise ValueError(f"level {d} exceeds subspace dimension {L.dim}")
    target = f if side == F_SIDE else f.complement()
    w = restricted_support_count(target, L)
    return SubspaceDichotomy(L, side, d, w, w >= vanishing_threshold(L.dim, d))


def nl_bound_from_ai(n: int, ai: int) -> int:
    if not 0 <= ai <= half_up(n):
        raise ValueError(f"AI {ai} outside 0..ceil(n/2)")
    return 2 * binom_sum(n - 1, ai - 2)


def weight_window(n: int, d: int) -> tuple[int, int]:
    return binom_sum(n, d), binom_sum(n, n - d - 1)


def weight_window_check(f: BooleanFunction, d: int) -> bool:
    """Necessary condition for AI(f) > d."""
    lo, hi = weight_window(f.n, d)
    return lo <= f.weight <= hi


def restricted_weight_window(n: int, r: int, ai: int) -> tuple[int, int]:
    d = ai - 1
    return binom_sum(n - r, d - r), binom_sum(n - r, n - d - 1)


def restricted_weight_window_check(f: BooleanFunction, L: AffineSubspace, ai: int) -> bool:
    if ai < 1:
        raise ValueError("ai must be at least 1")
    lo, hi = restricted_weight_window(f.n, L.codim, ai)
    return lo <= restricted_support_count(f, L) <= hi


def low_weight_vanishing_bound(n: int, k: int) -> tuple[int, AnfPolynomial]:
    """A nonzero g vanishing on all points of weight <= k has degree >= k+1.

    Its ANF coefficient a_u is the XOR of g over the subsets of u, which are
    all zeros when |u| <= k. x1*..*x_{k+1} shows the bound is tight.
    """
    if not 0 <= k < n:
        raise ValueError(f"k must be in 0..{n - 1}")
    return k + 1, AnfPolynomial(n, 1 << ((1 << (k + 1)) - 1))


# ---------------------------------------------------------------------------
# Corollary 1


class Cor1Outcome(str, enum.Enum):
    AI_AT_LEAST_D = "AI_AT_LEAST_D"
    DIVISIBLE = "DIVISIBLE"
    UNRESOLVED = "UNRESOLVED"
    VIOLATED = "VIOLATED"


def _vanishes_on(g: AnfPolynomial, region: int) -> bool:
    return g.truth_table().table & region == 0


def corollary1_analyze(f: BooleanFunction, l: AffineForm, *, exact_limit: int = DEFAULT_EXACT_LIMIT):
    """Distance-to-affine dichotomy for a balanced f.

    Returns (d, outcome, evidence). d is the largest level with
    d(f, l) >= 2**n - 2**(n-d). If AI(f) < d, then every annihilator of f of
    degree < d vanishes on {l = 0}, so l divides it. Every such annihilator
    of 1+f vanishes on {l = 1}, so l+1 divides it.
    """
    if l.is_constant:
        raise ValueError("a degree-1 affine form is required")
    if not f.is_balanced():
        raise NotBalancedError("f must be balanced")
    n = f.n
    lt = l.table(n)
    dist = popcount(f.table ^ lt.table)
    d = max_level(dist, n, n)
    evidence = {"distance": dist, "threshold": vanishing_threshold(n, d), "level": d}
    if d == 0:
        return d, Cor1Outcome.AI_AT_LEAST_D, evidence
    if n > exact_limit:
        return d, Cor1Outcome.UNRESOLVED, evidence
    res = exact_ai(f)
    evidence["exact_ai"] = res.ai
    if res.ai >= d:
        return d, Cor1Outcome.AI_AT_LEAST_D, evidence
    regions = {F_SIDE: full_mask(n) ^ lt.table, COMPLEMENT_SIDE: lt.table}
    divisible = {}
    for side, target in ((F_SIDE, f), (COMPLEMENT_SIDE, f.complement())):
        basis = annihilator_basis(target, res.ai)
        divisible[side] = all(_vanishes_on(g, regions[side]) for g in basis) if basis else None
    evidence["divisible"] = divisible
    evidence["factor"] = {F_SIDE: str(l), COMPLEMENT_SIDE: str(AffineForm(l.mask, l.constant ^ 1))}
    ok = any(v for v in divisible.values()) and all(v is not False for v in divisible.values())
    return d, (Cor1Outcome.DIVISIBLE if ok else Cor1Outcome.VIOLATED), evidence


def corollary1_certificate(f: BooleanFunction, l: AffineForm, **kw) -> AiCertificate:
    d, outcome, evidence = corollary1_analyze(f, l, **kw)
    bound = min(d, half_up(f.n)) if outcome is Cor1Outcome.AI_AT_LEAST_D else 0
    evidence = dict(evidence, outcome=outcome.value, form=str(l))
    return AiCertificate(bound, Method.COROLLARY1, f.n, evidence)


# ---------------------------------------------------------------------------
# Coverage by coordinate-fixing subspaces


def is_symmetric(f: BooleanFunction) -> bool:
    for w in range(f.n + 1):
        cls = weight_class_mask(f.n, w)
        if f.table & cls not in (0, cls):
            return False
    return True


def is_rotation_symmetric(f: BooleanFunction) -> bool:
    """f(x1, .., xn) == f(xn, x1, .., x_{n-1}) at every point."""
    n = f.n
    idx = np.arange(1 << n, dtype=np.int64)
    rot = ((idx << 1) | (idx >> (n - 1))) & ((1 << n) - 1)
    bits = f.bits()
    return bool(np.array_equal(bits, bits[rot]))


def _fixed_indicator(n: int, subset: tuple, bit: int) -> int:
    top = full_mask(n)
    ind = top
    for i in subset:
        v = var_table(n, i + 1)
        ind &= v if bit else top ^ v
    return ind


def _subset_family(n: int, k: int, symmetry: Symmetry, budget: int) -> list:
    if symmetry is Symmetry.SYMMETRIC:
        return [tuple(range(k))]
    if symmetry is Symmetry.ROTATION:
        seen = set()
        reps = []
        for c in combinations(range(n), k):
            m = sum(1 << i for i in c)
            canon = min(rotate_mask(n, m, s) for s in range(n))
            if canon not in seen:
                seen.add(canon)
                reps.append(tuple(i for i in range(n) if canon >> i & 1))
        return reps
    total = comb(n, k)
    if total > budget:
        raise SubsetBudgetError(f"{total} coordinate subsets exceed the budget of {budget}")
    return list(combinations(range(n), k))


def coverage_certifier(
    f: BooleanFunction,
    symmetry: Symmetry = Symmetry.GENERIC,
    *,
    budget: int = DEFAULT_SUBSET_BUDGET,
) -> AiCertificate:
    """Certify AI(f) >= d from restricted weights on coordinate-fixing subspaces.

    With t = ceil(n/2), the subspaces fix floor(n/2) coordinates to 0 (side f)
    or to 1 (side 1+f). If every subspace has fewer than 2**(t-d+1) points
    outside the side's support, an annihilator of degree < d must vanish on
    each subspace. The zero-fixed family covers every point of weight
    <= ceil(n/2), so such an annihilator would have degree > ceil(n/2). The
    one-fixed family covers weight >= floor(n/2), and the complemented
    argument applies. Both contradict AI <= ceil(n/2).
    """
    n = f.n
    if n < 2:
        raise ValueError("coverage needs n >= 2")
    symmetry = Symmetry(symmetry)
    if symmetry is Symmetry.SYMMETRIC and not is_symmetric(f):
        raise NotSymmetricError("function is not symmetric")
    if symmetry is Symmetry.ROTATION and not is_rotation_symmetric(f):
        raise NotSymmetricError("function is not rotation symmetric")
    k = n // 2
    t = n - k
    subsets = _subset_family(n, k, symmetry, budget)
    comp = f.complement()
    w0 = min(popcount(f.table & _fixed_indicator(n, s, 0)) for s in subsets)
    w1 = min(popcount(comp.table & _fixed_indicator(n, s, 1)) for s in subsets)
    d0 = certified_level(w0, t, t)
    d1 = certified_level(w1, t, t)
    bound = min(d0, d1)
    evidence = {
        "symmetry": symmetry.value,
        "subsets": len(subsets),
        "subspace_dim": t,
        "min_weight_f_on_zero_fixed": w0,
        "min_weight_1+f_on_one_fixed": w1,
        "uncovered_limit": (1 << (t - bound + 1)) - 1 if bound else None,
        "levels": {F_SIDE: d0, COMPLEMENT_SIDE: d1},
    }
    return AiCertificate(bound, Method.COVERAGE, n, evidence)


# ---------------------------------------------------------------------------
# Closed forms for symmetric and orbit-swapped functions


def corollary4_sums(bits) -> tuple[int, int]:
    n = len(bits) - 1
    hi, lo = half_up(n), n // 2
    s1 = sum(binom(hi, i) for i, v in enumerate(bits) if v and i <= hi)
    s0 = sum(binom(hi, i - lo) for i, v in enumerate(bits) if not v and i >= lo)
    return s1, s0


def corollary4_bound(v) -> AiCertificate:
    """Closed-form bound from a simplified value vector (v_0, .., v_n).

    U = min(sum_{v_i=1, i<=ceil(n/2)} C(ceil(n/2), i),
            sum_{v_i=0, i>=floor(n/2)} C(ceil(n/2), i - floor(n/2))),
    and AI >= d+1 for the largest d <= ceil(n/2)-1 with U > 2**ceil(n/2) - 2**(ceil(n/2)-d).
    """
    bits = tuple(int(b) for b in getattr(v, "bits", v))
    n = len(bits) - 1
    t = half_up(n)
    s1, s0 = corollary4_sums(bits)
    u = min(s1, s0)
    bound = 0
    level = None
    for d in range(0, t):
        if u > vanishing_threshold(t, d):
            bound, level = d + 1, d
    evidence = {
        "U": u,
        "sum_ones": s1,
        "sum_zeros": s0,
        "level": level,
        "threshold": vanishing_threshold(t, level) if level is not None else None,
    }
    return AiCertificate(bound, Method.COROLLARY4, n, evidence)


def corollary5_bound(n: int, h_size: int) -> AiCertificate:
    """AI(f') > ceil(n/2) - ceil(log2 |H|), reported as the integer bound ceil(n/2) - ceil(log2 |H|) + 1.

    When |H| is near a power of two the proof's strict inequality can fail;
    coverage_certifier on the concrete function is authoritative there.
    """
    if n % 2 == 0:
        raise ValueError("orbit-swap bound is defined for odd n")
    if h_size < 1:
        raise ValueError("|H| must be at least 1")
    t = half_up(n)
    lg = (h_size - 1).bit_length()
    raw = t - lg + 1
    bound = max(0, min(raw, t))
    evidence = {
        "h_size": h_size,
        "log2_ceil": lg,
        "uncapped": raw,
        "restricted_threshold": (1 << t) - (1 << lg),
        "power_of_two_edge": h_size + 1 >= 1 << lg,
    }
    return AiCertificate(bound, Method.COROLLARY5, n, evidence)


# ---------------------------------------------------------------------------
# Corollary 3


class ParityTail(str, enum.Enum):
    ODD_PARITY_TAIL = "ODD_PARITY_TAIL"
    EVEN_PARITY_TAIL = "EVEN_PARITY_TAIL"


def corollary3_threshold(n: int) -> int:
    return n // 2 if n % 2 else n // 2 - 1


def _value_vector(f: BooleanFunction) -> tuple:
    if not is_symmetric(f):
        raise NotSymmetricError("function is not symmetric")
    return tuple(int(f.table & weight_class_mask(f.n, w) != 0) for w in range(f.n + 1))


def corollary3_distances(f: BooleanFunction) -> tuple[int, int]:
    """d(f, x1+..+xn) and d(f, x1+..+xn+1)."""
    n = f.n
    lin = AffineForm((1 << n) - 1, 0)
    d = popcount(f.table ^ lin.table(n).table)
    return d, (1 << n) - d


def corollary3_tail_matches(f: BooleanFunction, case: ParityTail) -> bool:
    v = _value_vector(f)
    want = 1 if ParityTail(case) is ParityTail.ODD_PARITY_TAIL else 0
    return all(v[w] == (w % 2 == want) for w in range(corollary3_threshold(f.n), f.n + 1))


def corollary3_window_violation(f: BooleanFunction) -> bool:
    """Whether a parity hyperplane breaks the codim-1 weight window for AI = ceil(n/2).

    A violation proves AI(f) < ceil(n/2) without any annihilator search.
    """
    n = f.n
    t = half_up(n)
    for b in (0, 1):
        L = make_subspace(n, [((1 << n) - 1, b)])
        if not restricted_weight_window_check(f, L, t):
            return True
    return False


def corollary3_nonmax_check(f: BooleanFunction, case: ParityTail) -> bool:
    """True iff AI(f) < ceil(n/2) for a symmetric f with a parity tail.

    Above the threshold weight the tail makes f agree with x1+..+xn or with
    its complement. So f's weight on one parity hyperplane is pushed outside
    the restricted window that maximal AI allows. The window route and the
    exact engine must agree whenever the window fires.
    """
    if not corollary3_tail_matches(f, case):
        raise PatternMismatchError(f"value vector tail does not match {ParityTail(case).value}")
    nonmax = exact_ai(f).ai < half_up(f.n)
    if corollary3_window_violation(f) and not nonmax:
        raise AssertionError("restricted weight window contradicts the exact AI")
    return nonmax
