"""Boolean function representation, transforms, affine subspaces and restriction.

Truth tables are Python ints holding 2**n bits. Bit ``idx(x)`` stores f(x) where
``idx(x) = sum(x_i << (i - 1))``, i.e. x1 is the least significant bit of the
index. Every module in the package shares this convention.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

MAX_VARS = 24


class _ZeroDegree:
    """Degree marker of the zero polynomial (distinct from 0 and -1)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ZERO"

    def __reduce__(self):
        return (_ZeroDegree, ())


ZERO = _ZeroDegree()


class InconsistentSystemError(ValueError):
    pass


class DegenerateFormError(ValueError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_VARS:
        raise ValueError(f"variable count must be in 1..{MAX_VARS}, got {n}")


@lru_cache(maxsize=None)
def full_mask(n: int) -> int:
    return (1 << (1 << n)) - 1


@lru_cache(maxsize=None)
def var_table(n: int, i: int) -> int:
    """Truth table of the coordinate function x_i (1-based) on n variables."""
    if not 1 <= i <= n:
        raise ValueError(f"variable index {i} out of range 1..{n}")
    half = 1 << (i - 1)
    period = half << 1
    block = ((1 << half) - 1) << half
    repunit = full_mask(n) // ((1 << period) - 1)
    return block * repunit


def linear_table(n: int, mask: int) -> int:
    t = 0
    for i in range(n):
        if mask >> i & 1:
            t ^= var_table(n, i + 1)
    return t


def popcount(x: int) -> int:
    return x.bit_count()


def parity(x: int) -> int:
    return x.bit_count() & 1


def rotate_mask(n: int, mask: int, k: int = 1) -> int:
    """Apply the cyclic shift (x1..xn) -> (xn, x1, .., x_{n-1}) k times to an index."""
    k %= n
    if k == 0:
        return mask
    top = (1 << n) - 1
    return ((mask << k) | (mask >> (n - k))) & top


def table_to_bits(table: int, n: int) -> np.ndarray:
    """Unpack a table int into a uint8 array of 2**n bits (index order)."""
    size = 1 << n
    raw = table.to_bytes(max(1, size // 8), "little")
    bits = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")
    return bits[:size]


def bits_to_table(bits: np.ndarray) -> int:
    packed = np.packbits(np.asarray(bits, dtype=np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


# ---------------------------------------------------------------------------
# Functions and polynomials


@dataclass(frozen=True)
class BooleanFunction:
    n: int
    table: int

    def __post_init__(self):
        _check_n(self.n)
        if self.table < 0 or self.table >> (1 << self.n):
            raise ValueError("truth table does not fit in 2**n bits")

    @classmethod
    def constant(cls, n: int, value: int) -> "BooleanFunction":
        return cls(n, full_mask(n) if value else 0)

    @classmethod
    def variable(cls, n: int, i: int) -> "BooleanFunction":
        return cls(n, var_table(n, i))

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "BooleanFunction":
        size = len(bits)
        n = size.bit_length() - 1
        if size != 1 << n:
            raise ValueError("table length must be a power of two")
        return cls(n, bits_to_table(np.asarray(bits)))

    @classmethod
    def from_callable(cls, n: int, func) -> "BooleanFunction":
        """Build from ``func(x)`` where x is the integer index of the point."""
        t = 0
        for x in range(1 << n):
            if func(x):
                t |= 1 << x
        return cls(n, t)

    def __call__(self, x: int) -> int:
        return evaluate(self, x)

    def __xor__(self, other: "BooleanFunction") -> "BooleanFunction":
        _same_n(self, other)
        return BooleanFunction(self.n, self.table ^ other.table)

    def __and__(self, other: "BooleanFunction") -> "BooleanFunction":
        _same_n(self, other)
        return BooleanFunction(self.n, self.table & other.table)

    def complement(self) -> "BooleanFunction":
        """The function 1 + f."""
        return BooleanFunction(self.n, self.table ^ full_mask(self.n))

    @property
    def weight(self) -> int:
        return popcount(self.table)

    def is_balanced(self) -> bool:
        return 2 * self.weight == 1 << self.n

    def is_constant(self) -> bool:
        return self.table in (0, full_mask(self.n))

    def bits(self) -> np.ndarray:
        return table_to_bits(self.table, self.n)

    def support(self) -> np.ndarray:
        """Sorted indices of S_1(f)."""
        return np.flatnonzero(self.bits()).astype(np.int64)

    def anf(self) -> "AnfPolynomial":
        return AnfPolynomial(self.n, moebius(self.table, self.n))

    def degree(self):
        return self.anf().degree()

    def to_hex(self) -> str:
        return table_to_hex(self.table, self.n)

    @classmethod
    def from_hex(cls, text: str, n: int | None = None) -> "BooleanFunction":
        return cls(*hex_to_table(text, n))

    def __repr__(self):
        return f"BooleanFunction(n={self.n}, table=0x{self.to_hex()})"


def _same_n(a, b) -> None:
    if a.n != b.n:
        raise ValueError(f"variable count mismatch: {a.n} vs {b.n}")


@dataclass(frozen=True)
class AnfPolynomial:
    """ANF coefficients; bit ``u`` is the coefficient of prod_{i in u} x_i."""

    n: int
    coeffs: int

    def __post_init__(self):
        _check_n(self.n)
        if self.coeffs < 0 or self.coeffs >> (1 << self.n):
            raise ValueError("coefficients do not fit in 2**n bits")

    @classmethod
    def from_monomials(cls, n: int, masks: Iterable[int]) -> "AnfPolynomial":
        c = 0
        for u in masks:
            c ^= 1 << u
        return cls(n, c)

    def monomials(self) -> list[int]:
        return [int(u) for u in np.flatnonzero(table_to_bits(self.coeffs, self.n))]

    def is_zero(self) -> bool:
        return self.coeffs == 0

    def degree(self):
        return degree(self)

    def truth_table(self) -> BooleanFunction:
        return BooleanFunction(self.n, moebius(self.coeffs, self.n))

    def __str__(self):
        return format_anf(self)


def moebius(table: int, n: int) -> int:
    """Binary Moebius transform on a packed table; an involution."""
    top = full_mask(n)
    for i in range(n):
        low = top ^ var_table(n, i + 1)
        table ^= (table & low) << (1 << i)
    return table


def anf_transform(obj):
    """Truth table -> ANF, or ANF -> truth table."""
    if isinstance(obj, BooleanFunction):
        return AnfPolynomial(obj.n, moebius(obj.table, obj.n))
    if isinstance(obj, AnfPolynomial):
        return BooleanFunction(obj.n, moebius(obj.coeffs, obj.n))
    raise TypeError(f"expected BooleanFunction or AnfPolynomial, got {type(obj).__name__}")


def degree(p: AnfPolynomial):
    if p.coeffs == 0:
        return ZERO
    n = p.n
    for d in range(n, -1, -1):
        if p.coeffs & _weight_class_mask(n, d):
            return d
    raise AssertionError("unreachable")


@lru_cache(maxsize=None)
def _weight_class_mask(n: int, w: int) -> int:
    """Int with bit u set for every index u of popcount w."""
    idx = np.arange(1 << n, dtype=np.int64)
    return bits_to_table(np.bitwise_count(idx) == w)


def weight_class_mask(n: int, w: int) -> int:
    return _weight_class_mask(n, w)


def evaluate(f: BooleanFunction, x) -> int:
    if not isinstance(x, int):
        x = point_index(x)
    if not 0 <= x < 1 << f.n:
        raise IndexError(f"point index {x} out of range for n={f.n}")
    return f.table >> x & 1


def point_index(bits: Sequence[int]) -> int:
    """idx((x1, .., xn)) with x1 least significant."""
    return sum((b & 1) << i for i, b in enumerate(bits))


def weight_and_balance(f: BooleanFunction) -> tuple[int, bool]:
    return f.weight, f.is_balanced()


# ---------------------------------------------------------------------------
# Spectra


@dataclass(frozen=True)
class WalshSpectrum:
    n: int
    values: tuple

    def __getitem__(self, a: int) -> int:
        return self.values[a]

    def max_abs(self) -> int:
        return max(abs(v) for v in self.values)


def _fwht(values: np.ndarray) -> np.ndarray:
    a = values.astype(np.int64).copy()
    size = a.size
    h = 1
    while h < size:
        a = a.reshape(-1, 2, h)
        a = np.stack((a[:, 0] + a[:, 1], a[:, 0] - a[:, 1]), axis=1).reshape(size)
        h <<= 1
    return a


def walsh_values(f: BooleanFunction) -> np.ndarray:
    signs = 1 - 2 * f.bits().astype(np.int64)
    return _fwht(signs)


def walsh_spectrum_and_nonlinearity(f: BooleanFunction) -> tuple[WalshSpectrum, int]:
    w = walsh_values(f)
    nl = (1 << (f.n - 1)) - int(np.abs(w).max()) // 2
    return WalshSpectrum(f.n, tuple(int(v) for v in w)), nl


def nonlinearity(f: BooleanFunction) -> int:
    w = walsh_values(f)
    return (1 << (f.n - 1)) - int(np.abs(w).max()) // 2


def autocorrelation(f: BooleanFunction) -> np.ndarray:
    """r_f(a) for every shift a, via the Wiener-Khinchin identity."""
    w = walsh_values(f)
    return _fwht(w * w) >> f.n


def autocorrelation_profile(f: BooleanFunction) -> tuple[int, int]:
    """Return (delta, pc_order): the max |r_f(a)| over a != 0 and the PC order."""
    r = autocorrelation(f)
    n = f.n
    delta = int(np.abs(r[1:]).max()) if r.size > 1 else 0
    wts = np.bitwise_count(np.arange(1 << n, dtype=np.int64))
    pc = 0
    for k in range(1, n + 1):
        if np.any(r[wts == k] != 0):
            break
        pc = k
    return delta, pc


# ---------------------------------------------------------------------------
# Affine forms and subspaces


@dataclass(frozen=True)
class AffineForm:
    """l(x) = parity(x & mask) xor constant."""

    mask: int
    constant: int = 0

    @property
    def is_constant(self) -> bool:
        return self.mask == 0

    def value(self, x: int) -> int:
        return parity(x & self.mask) ^ self.constant

    def table(self, n: int) -> BooleanFunction:
        if self.mask >> n:
            raise ValueError(f"affine form mentions variables beyond n={n}")
        t = linear_table(n, self.mask)
        if self.constant:
            t ^= full_mask(n)
        return BooleanFunction(n, t)

    def __str__(self):
        terms = [f"x{i + 1}" for i in range(self.mask.bit_length()) if self.mask >> i & 1]
        if self.constant or not terms:
            terms.append(str(self.constant))
        return " + ".join(terms)


def distance(f: BooleanFunction, g: BooleanFunction) -> int:
    _same_n(f, g)
    return popcount(f.table ^ g.table)


def distance_to_affine(f: BooleanFunction, l: AffineForm) -> int:
    d = distance(f, l.table(f.n))
    w = walsh_values(f)[l.mask]
    via_walsh = (1 << (f.n - 1)) - (-1) ** l.constant * int(w) // 2
    if via_walsh != d:
        raise AssertionError(f"distance paths disagree: {d} vs {via_walsh}")
    return d


@dataclass(frozen=True)
class AffineSubspace:
    """Solution set of reduced constraints ``parity(x & mask) == bit``.

    Pivots are the lowest set bit of each mask, strictly increasing, and no
    pivot appears in any other row.
    """

    n: int
    constraints: tuple

    @property
    def codim(self) -> int:
        return len(self.constraints)

    @property
    def dim(self) -> int:
        return self.n - len(self.constraints)

    @property
    def pivots(self) -> tuple:
        return tuple((m & -m).bit_length() - 1 for m, _ in self.constraints)

    @property
    def free_coordinates(self) -> tuple:
        """0-based free coordinates in ascending order."""
        piv = set(self.pivots)
        return tuple(i for i in range(self.n) if i not in piv)

    def contains(self, x: int) -> bool:
        return all(parity(x & m) == b for m, b in self.constraints)

    def indicator(self) -> int:
        """Packed table of the subspace's points."""
        top = full_mask(self.n)
        ind = top
        for m, b in self.constraints:
            lin = linear_table(self.n, m)
            ind &= lin if b else top ^ lin
        return ind

    def points(self) -> np.ndarray:
        """Points in the order of their free-coordinate value y = 0, 1, .."""
        free = self.free_coordinates
        y = np.arange(1 << len(free), dtype=np.int64)
        x = np.zeros_like(y)
        for j, c in enumerate(free):
            x |= ((y >> j) & 1) << c
        for (m, b), p in zip(self.constraints, self.pivots):
            rest = m ^ (1 << p)
            bit = (np.bitwise_count(x & rest) & 1) ^ b
            x |= bit.astype(np.int64) << p
        return x

    def lift(self, y: int) -> int:
        x = 0
        for j, c in enumerate(self.free_coordinates):
            x |= (y >> j & 1) << c
        for (m, b), p in zip(self.constraints, self.pivots):
            x |= (parity(x & (m ^ (1 << p))) ^ b) << p
        return x


def make_subspace(n: int, constraints: Iterable) -> AffineSubspace:
    """Row-reduce affine constraints ``l(x) = 0`` into an AffineSubspace.

    Each constraint is an AffineForm (meaning l(x) = 0) or a (mask, bit) pair
    (meaning parity(x & mask) = bit).
    """
    _check_n(n)
    rows = []
    for c in constraints:
        if isinstance(c, AffineForm):
            m, b = c.mask, c.constant
        else:
            m, b = c
        if m == 0:
            raise DegenerateFormError("constant form cannot define a constraint")
        if m >> n:
            raise ValueError(f"constraint mask {m:#x} exceeds n={n}")
        rows.append((m, b & 1))
    if not rows:
        raise ValueError("at least one constraint is required")

    # Gauss-Jordan with the lowest set bit as pivot; eliminating a new pivot
    # from older rows never touches their own (lower) pivots.
    basis: dict[int, tuple[int, int]] = {}
    for m, b in rows:
        for p, (pm, pb) in basis.items():
            if m >> p & 1:
                m ^= pm
                b ^= pb
        if m == 0:
            if b:
                raise InconsistentSystemError("constraints have an empty solution set")
            continue
        p = (m & -m).bit_length() - 1
        for q, (qm, qb) in basis.items():
            if qm >> p & 1:
                basis[q] = (qm ^ m, qb ^ b)
        basis[p] = (m, b)
    return AffineSubspace(n, tuple(basis[p] for p in sorted(basis)))


def coordinate_subspace(n: int, fixed: dict) -> AffineSubspace:
    """Subspace fixing coordinates {i: bit} (1-based i)."""
    return make_subspace(n, [(1 << (i - 1), b) for i, b in sorted(fixed.items())])


def restrict(f: BooleanFunction, L: AffineSubspace) -> BooleanFunction:
    """f|_L as a function of L's free coordinates in ascending order."""
    _same_n(f, L)
    if L.dim < 1:
        raise ValueError("restriction to a single point; use evaluate at that point")
    bits = f.bits()[L.points()]
    return BooleanFunction(L.dim, bits_to_table(bits))


def restricted_support_count(f: BooleanFunction, L: AffineSubspace) -> int:
    _same_n(f, L)
    return popcount(f.table & L.indicator())


# ---------------------------------------------------------------------------
# Text formats


def table_to_hex(table: int, n: int) -> str:
    digits = max(1, (1 << n) // 4)
    return format(table, f"0{digits}X")


def hex_to_table(text: str, n: int | None = None) -> tuple[int, int]:
    s = "".join(text.split())
    if s.lower().startswith("0x"):
        s = s[2:]
    if not s:
        raise ParseError("empty hex table", 0)
    for pos, ch in enumerate(s):
        if ch not in "0123456789abcdefABCDEF":
            raise ParseError(f"invalid hex digit {ch!r}", pos)
    if n is None:
        if len(s) == 1:
            n = 2
        else:
            n = (len(s) * 4).bit_length() - 1
            if len(s) * 4 != 1 << n:
                raise ParseError(f"hex length {len(s)} is not 2**n / 4")
    else:
        _check_n(n)
        if len(s) != max(1, (1 << n) // 4):
            raise ParseError(f"hex length {len(s)} does not match n={n}")
    table = int(s, 16)
    if table >> (1 << n):
        raise ParseError(f"hex value exceeds 2**{n} bits")
    return n, table


_TOKEN = re.compile(r"\s*(?:(?P<var>x(?P<idx>\d+))|(?P<one>1)|(?P<zero>0)|(?P<op>[+*]))")


def parse_anf(text: str, n: int) -> AnfPolynomial:
    """Parse '+'-separated terms of '*'-joined factors (``1`` or ``x<i>``)."""
    _check_n(n)
    coeffs = 0
    pos = 0
    term_mask = None
    term_const = True
    expect_factor = True
    end = len(text.rstrip())
    saw_term = False
    while pos < end:
        m = _TOKEN.match(text, pos)
        if not m:
            while text[pos].isspace():
                pos += 1
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup) if m.lastgroup else pos
        if m.group("op"):
            if expect_factor:
                raise ParseError(f"operator {m.group('op')!r} without operand", start)
            if m.group("op") == "+":
                coeffs ^= (1 << term_mask) if term_const else 0
                term_mask, term_const = None, True
            expect_factor = True
        else:
            if not expect_factor:
                raise ParseError("missing operator between factors", start)
            if term_mask is None:
                term_mask = 0
            if m.group("var"):
                i = int(m.group("idx"))
                if not 1 <= i <= n:
                    raise ParseError(f"variable x{i} outside 1..{n}", start)
                term_mask |= 1 << (i - 1)
            elif m.group("zero"):
                term_const = False
            expect_factor = False
            saw_term = True
        pos = m.end()
    if expect_factor:
        if not saw_term:
            raise ParseError("empty expression", 0)
        raise ParseError("expression ends with an operator", end)
    coeffs ^= (1 << term_mask) if term_const else 0
    return AnfPolynomial(n, coeffs)


def _monomial_key(u: int) -> tuple:
    return (u.bit_count(), u)


def format_anf(p: AnfPolynomial) -> str:
    """Canonical text: terms ordered by (degree, mask), '0' for the zero polynomial."""
    masks = sorted(p.monomials(), key=_monomial_key)
    if not masks:
        return "0"
    terms = []
    for u in masks:
        if u == 0:
            terms.append("1")
        else:
            terms.append("*".join(f"x{i + 1}" for i in range(p.n) if u >> i & 1))
    return " + ".join(terms)
