"""Symmetric and rotation-symmetric function families, and cyclic orbits."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

import numpy as np

from .bounds import (
    AiCertificate,
    Method,
    NotSymmetricError,
    ParityTail,
    corollary3_threshold,
    corollary5_bound,
    half_up,
    is_rotation_symmetric,
    is_symmetric,
)
from .core import BooleanFunction, ParseError, bits_to_table, rotate_mask, weight_class_mask


class EvenNError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Symmetric functions


@dataclass(frozen=True)
class SimplifiedValueVector:
    n: int
    bits: tuple

    def __post_init__(self):
        if len(self.bits) != self.n + 1:
            raise ValueError(f"value vector needs {self.n + 1} entries, got {len(self.bits)}")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("value vector entries must be 0 or 1")

    @classmethod
    def of(cls, bits: Iterable[int]) -> "SimplifiedValueVector":
        b = tuple(int(x) for x in bits)
        return cls(len(b) - 1, b)

    @classmethod
    def parse(cls, text: str) -> "SimplifiedValueVector":
        s = "".join(text.split())
        for pos, ch in enumerate(s):
            if ch not in "01":
                raise ParseError(f"value vector digit {ch!r} is not 0/1", pos)
        if len(s) < 2:
            raise ParseError("value vector needs at least 2 entries", 0)
        return cls.of(int(c) for c in s)

    def __str__(self):
        return "".join(map(str, self.bits))

    def __getitem__(self, i: int) -> int:
        return self.bits[i]


def symmetric_expand(v: SimplifiedValueVector) -> BooleanFunction:
    n = v.n
    t = 0
    for w, b in enumerate(v.bits):
        if b:
            t |= weight_class_mask(n, w)
    return BooleanFunction(n, t)


def value_vector(f: BooleanFunction) -> SimplifiedValueVector:
    if not is_symmetric(f):
        raise NotSymmetricError("function is not symmetric")
    return SimplifiedValueVector(
        f.n, tuple(int(f.table & weight_class_mask(f.n, w) != 0) for w in range(f.n + 1))
    )


def elementary_symmetric_sum(n: int, ks: Iterable[int]) -> SimplifiedValueVector:
    """Value vector of the sum of sigma_k over ks; C(i, k) is odd iff k & i == k."""
    ks = sorted(set(ks))
    if any(not 0 <= k <= n for k in ks):
        raise ValueError(f"sigma indices must lie in 0..{n}")
    bits = []
    for i in range(n + 1):
        b = 0
        for k in ks:
            b ^= int(k & i == k)
        bits.append(b)
    return SimplifiedValueVector(n, tuple(bits))


def majority_vector(n: int) -> SimplifiedValueVector:
    """v_i = 1 iff i < ceil(n/2); balanced for odd n."""
    if n % 2 == 0:
        raise EvenNError("majority base is balanced only for odd n; use nearest_balanced_even_variant")
    t = half_up(n)
    return SimplifiedValueVector(n, tuple(int(i < t) for i in range(n + 1)))


def example2_sets(n: int, i: int) -> tuple[set, set]:
    lo, hi = n // 2, half_up(n)
    if not 1 <= i <= lo or i == n - i:
        raise ValueError(f"need 1 <= i <= {lo} and i != n - i")
    ones = (set(range(1, lo + 1)) | {n - i}) - {i}
    zeros = (set(range(hi, n + 1)) | {i}) - {n - i}
    if ones & zeros:
        raise ValueError(f"weights {sorted(ones & zeros)} are assigned both 1 and 0 (even n)")
    return ones, zeros


def example2_vector(n: int, i: int, *, weight0: int = 0) -> SimplifiedValueVector:
    """f = 1 on weights I, 0 on weights J; weight 0 is in neither set and gets ``weight0``."""
    ones, _ = example2_sets(n, i)
    bits = [int(w in ones) for w in range(n + 1)]
    bits[0] = weight0
    return SimplifiedValueVector(n, tuple(bits))


def example2_claimed_bound(n: int, i: int) -> tuple[int, int]:
    """(t, ceil(n/2) - t + 1) with t the least positive integer such that C(ceil(n/2), i) + 1 < 2**t."""
    c = comb(half_up(n), i)
    t = 1
    while not c + 1 < 1 << t:
        t += 1
    return t, half_up(n) - t + 1


class Corollary3Case(str, enum.Enum):
    ODD = "ODD"
    EVEN = "EVEN"


def corollary3_vector(
    n: int,
    case: Corollary3Case,
    parity: ParityTail,
    low_completion: Sequence[int],
) -> SimplifiedValueVector:
    """Parity tail from the threshold weight upward; ``low_completion`` fills weights below it."""
    case = Corollary3Case(case)
    if (n % 2 == 1) != (case is Corollary3Case.ODD):
        raise ValueError(f"case {case.value} does not match n={n}")
    thr = corollary3_threshold(n)
    if len(low_completion) != thr:
        raise ValueError(f"low completion must have {thr} entries, got {len(low_completion)}")
    want = 1 if ParityTail(parity) is ParityTail.ODD_PARITY_TAIL else 0
    bits = [int(b) for b in low_completion] + [int(w % 2 == want) for w in range(thr, n + 1)]
    return SimplifiedValueVector(n, tuple(bits))


# ---------------------------------------------------------------------------
# Cyclic orbits


@dataclass(frozen=True)
class CyclicOrbit:
    n: int
    representative: int
    size: int

    def members(self) -> list[int]:
        return [rotate_mask(self.n, self.representative, k) for k in range(self.size)]

    @property
    def weight(self) -> int:
        return self.representative.bit_count()


def orbit_of(n: int, mask: int) -> CyclicOrbit:
    if not 0 <= mask < 1 << n:
        raise ValueError(f"mask out of range for n={n}")
    size = n
    for k in range(1, n + 1):
        if n % k == 0 and rotate_mask(n, mask, k) == mask:
            size = k
            break
    rep = min(rotate_mask(n, mask, k) for k in range(size))
    return CyclicOrbit(n, rep, size)


def _rotate_all(x: np.ndarray, n: int, k: int) -> np.ndarray:
    top = (1 << n) - 1
    return ((x << k) | (x >> (n - k))) & top if k % n else x


@lru_cache(maxsize=8)
def _canonical_reps(n: int) -> np.ndarray:
    x = np.arange(1 << n, dtype=np.int64)
    rep = x.copy()
    for k in range(1, n):
        np.minimum(rep, _rotate_all(x, n, k), out=rep)
    return rep


def orbit_representatives(n: int) -> list[CyclicOrbit]:
    """All rotation orbits of F_2^n, ordered by representative."""
    if not 1 <= n <= 24:
        raise ValueError("n must be in 1..24")
    rep = _canonical_reps(n)
    reps = np.flatnonzero(rep == np.arange(1 << n))
    sizes = np.full(reps.size, n, dtype=np.int64)
    for k in sorted((k for k in range(1, n) if n % k == 0), reverse=True):
        sizes[_rotate_all(reps, n, k) == reps] = k
    return [CyclicOrbit(n, int(r), int(s)) for r, s in zip(reps, sizes)]


def burnside_count(n: int) -> int:
    from math import gcd

    return sum(1 << gcd(k, n) for k in range(n)) // n


# ---------------------------------------------------------------------------
# Rotation-symmetric functions


@dataclass(frozen=True)
class RsbfSpec:
    n: int
    assignment: dict

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.assignment.items()))))


def rsbf_expand(spec: RsbfSpec) -> BooleanFunction:
    n = spec.n
    rep = _canonical_reps(n)
    reps = np.flatnonzero(rep == np.arange(1 << n))
    missing = [int(r) for r in reps if int(r) not in spec.assignment]
    if missing:
        raise ValueError(f"assignment misses {len(missing)} orbits, e.g. representative {missing[0]:#x}")
    extra = set(spec.assignment) - {int(r) for r in reps}
    if extra:
        raise ValueError(f"{min(extra):#x} is not a minimal rotation representative")
    lut = np.zeros(1 << n, dtype=np.uint8)
    for r, b in spec.assignment.items():
        lut[r] = b & 1
    return BooleanFunction(n, bits_to_table(lut[rep]))


def rsbf_spec_of(f: BooleanFunction) -> RsbfSpec:
    if not is_rotation_symmetric(f):
        raise NotSymmetricError("function is not rotation symmetric")
    bits = f.bits()
    return RsbfSpec(f.n, {o.representative: int(bits[o.representative]) for o in orbit_representatives(f.n)})


def random_rsbf(n: int, rng: np.random.Generator) -> BooleanFunction:
    rep = _canonical_reps(n)
    values = rng.integers(0, 2, size=1 << n, dtype=np.uint8)
    return BooleanFunction(n, bits_to_table(values[rep]))


def parse_orbit_file(text: str, n: int) -> RsbfSpec:
    """Lines ``<representative-hex> <bit>``; blank lines and '#' comments ignored."""
    assignment = {}
    offset = 0
    for line in text.splitlines(keepends=True):
        body = line.split("#", 1)[0]
        parts = body.split()
        if parts:
            if len(parts) != 2 or parts[1] not in ("0", "1"):
                raise ParseError("expected '<representative-hex> <0|1>'", offset)
            try:
                r = int(parts[0], 16)
            except ValueError:
                raise ParseError(f"bad hex representative {parts[0]!r}", offset) from None
            if r in assignment:
                raise ParseError(f"representative {parts[0]} assigned twice", offset)
            assignment[r] = int(parts[1])
        offset += len(line)
    return RsbfSpec(n, assignment)


def format_orbit_file(spec: RsbfSpec) -> str:
    width = max(1, (spec.n + 3) // 4)
    return "".join(f"{r:0{width}x} {b}\n" for r, b in sorted(spec.assignment.items()))


# ---------------------------------------------------------------------------
# Constructions


@dataclass(frozen=True)
class OrbitSwap:
    function: BooleanFunction
    certificate: AiCertificate
    h: tuple
    h_prime: tuple


def orbit_swap_construction(n: int, h: Sequence[CyclicOrbit], h_prime: Sequence[CyclicOrbit]) -> OrbitSwap:
    """Swap orbits H (zeros of the majority base) with H' (ones) of equal total size."""
    if n % 2 == 0:
        raise EvenNError("orbit swap is defined on the odd-n majority base")
    t = half_up(n)
    h = [orbit_of(n, o.representative) for o in h]
    h_prime = [orbit_of(n, o.representative) for o in h_prime]
    for group in (h, h_prime):
        if len({o.representative for o in group}) != len(group):
            raise ValueError("orbits in a swap set must be distinct")
    if sum(o.size for o in h) != sum(o.size for o in h_prime):
        raise ValueError("H and H' must have the same number of points")
    if any(o.weight < t for o in h):
        raise ValueError("H orbits must lie in S_0 of the base (weight >= ceil(n/2))")
    if any(o.weight >= t for o in h_prime):
        raise ValueError("H' orbits must lie in S_1 of the base (weight < ceil(n/2))")
    table = symmetric_expand(majority_vector(n)).table
    for o in h:
        for x in o.members():
            table |= 1 << x
    for o in h_prime:
        for x in o.members():
            table &= ~(1 << x)
    f = BooleanFunction(n, table)
    h_size = sum(o.size for o in h)
    if h_size:
        cert = corollary5_bound(n, h_size)
    else:
        cert = AiCertificate(t, Method.COROLLARY5, n, {"h_size": 0})
    return OrbitSwap(f, cert, tuple(h), tuple(h_prime))


def nearest_balanced_even_variant(n: int) -> tuple[BooleanFunction, int]:
    """1 below weight n/2, 0 above, and a subset of weight-n/2 orbits set to 1.

    The subset is chosen by exact subset sum over orbit sizes, taking the
    smallest representatives first among equally good choices.
    Returns the function and |wt - 2**(n-1)|.
    """
    if n % 2:
        raise ValueError("n must be even")
    half = n // 2
    base = sum(comb(n, w) for w in range(half))
    need = (1 << (n - 1)) - base
    orbits = [o for o in orbit_representatives(n) if o.weight == half]
    # reach[j] = achievable sums using orbits[j:]
    reach = [None] * (len(orbits) + 1)
    reach[-1] = {0}
    for j in range(len(orbits) - 1, -1, -1):
        s = orbits[j].size
        reach[j] = reach[j + 1] | {r + s for r in reach[j + 1]}
    target = min(reach[0], key=lambda s: (abs(need - s), s > need))
    chosen = []
    rem = target
    for j, o in enumerate(orbits):
        if rem - o.size in reach[j + 1]:
            chosen.append(o)
            rem -= o.size
    table = 0
    for w in range(half):
        table |= weight_class_mask(n, w)
    for o in chosen:
        for x in o.members():
            table |= 1 << x
    f = BooleanFunction(n, table)
    return f, abs(f.weight - (1 << (n - 1)))
