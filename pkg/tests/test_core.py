import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from boolai.core import (
    ZERO,
    AffineForm,
    AnfPolynomial,
    BooleanFunction,
    DegenerateFormError,
    InconsistentSystemError,
    ParseError,
    anf_transform,
    autocorrelation,
    autocorrelation_profile,
    coordinate_subspace,
    degree,
    distance_to_affine,
    evaluate,
    format_anf,
    make_subspace,
    moebius,
    nonlinearity,
    parse_anf,
    restrict,
    restricted_support_count,
    walsh_spectrum_and_nonlinearity,
    weight_and_balance,
)
from boolai.families import SimplifiedValueVector, symmetric_expand
from boolai.oracle import naive_autocorrelation, naive_nonlinearity, naive_walsh

from conftest import EXAMPLE1_VECTOR, functions, random_function


def x1x2():
    return BooleanFunction(2, 0b1000)


# -- evaluation and weight ---------------------------------------------------


def test_evaluate_and():
    f = x1x2()
    assert evaluate(f, (1, 1)) == 1
    assert evaluate(f, (1, 0)) == 0
    assert evaluate(f, (0, 1)) == 0


def test_evaluate_constant_one():
    f = BooleanFunction.constant(3, 1)
    assert all(evaluate(f, x) == 1 for x in itertools.product((0, 1), repeat=3))


def test_evaluate_out_of_range():
    with pytest.raises(IndexError):
        evaluate(x1x2(), 4)


def test_index_encoding_x1_is_lsb():
    f = BooleanFunction.variable(3, 1)
    for x in range(8):
        assert f(x) == x & 1
    assert BooleanFunction.variable(2, 1).table == 0b1010


def test_weight_and_balance_examples():
    assert weight_and_balance(BooleanFunction.variable(2, 1)) == (2, True)
    assert weight_and_balance(x1x2()) == (1, False)
    f = symmetric_expand(SimplifiedValueVector.parse(EXAMPLE1_VECTOR))
    assert weight_and_balance(f) == (16384, True)


def test_table_must_fit():
    with pytest.raises(ValueError):
        BooleanFunction(2, 1 << 4)
    with pytest.raises(ValueError):
        BooleanFunction(25, 0)


# -- ANF -----------------------------------------------------------------------


def test_anf_of_and_is_single_monomial():
    p = anf_transform(x1x2())
    assert p.coeffs == 1 << 0b11


def test_anf_to_table_one_plus_x1():
    f = anf_transform(AnfPolynomial(1, 0b11))
    assert f.bits().tolist() == [1, 0]


@settings(max_examples=60, deadline=None)
@given(functions(max_n=12))
def test_moebius_involution(f):
    assert anf_transform(anf_transform(f)) == f
    assert moebius(moebius(f.table, f.n), f.n) == f.table


def test_moebius_involution_n10(rng):
    f = random_function(rng, 10)
    assert anf_transform(anf_transform(f)) == f


def test_anf_coefficient_is_xor_over_subsets():
    # a_u = XOR of f(v) for v inside u, computed pointwise
    rng = np.random.default_rng(3)
    f = random_function(rng, 5)
    p = f.anf()
    for u in range(32):
        acc = 0
        for v in range(32):
            if v & u == v:
                acc ^= f(v)
        assert (p.coeffs >> u) & 1 == acc


def test_degree_examples():
    assert degree(parse_anf("x1*x2 + x3", 3)) == 2
    assert degree(AnfPolynomial(3, 1)) == 0
    assert degree(AnfPolynomial(3, 0)) is ZERO
    assert ZERO != 0
    assert repr(ZERO) == "ZERO"


@settings(max_examples=60, deadline=None)
@given(functions(max_n=7), st.data())
def test_degree_of_product_is_subadditive(f, data):
    g = BooleanFunction(f.n, data.draw(st.integers(0, (1 << (1 << f.n)) - 1)))
    prod = f & g
    df, dg, dp = f.degree(), g.degree(), prod.degree()
    if dp is ZERO:
        return
    assert dp <= df + dg
    assert dp <= f.n


# -- Walsh and nonlinearity ----------------------------------------------------


def test_walsh_x1_n1():
    spec, nl = walsh_spectrum_and_nonlinearity(BooleanFunction.variable(1, 1))
    assert spec.values == (0, 2)
    assert nl == 0


def test_nonlinearity_and():
    assert nonlinearity(x1x2()) == 1
    assert naive_nonlinearity(x1x2()) == 1


@settings(max_examples=80, deadline=None)
@given(functions(max_n=6))
def test_walsh_matches_naive(f):
    spec, nl = walsh_spectrum_and_nonlinearity(f)
    assert list(spec.values) == naive_walsh(f)
    assert nl == naive_nonlinearity(f)


@settings(max_examples=40, deadline=None)
@given(functions(max_n=12))
def test_parseval(f):
    spec, _ = walsh_spectrum_and_nonlinearity(f)
    assert sum(v * v for v in spec.values) == 1 << (2 * f.n)
    assert all(v % 2 == 0 for v in spec.values)


def test_distance_to_affine_examples():
    n = 3
    x1 = BooleanFunction.variable(n, 1)
    assert distance_to_affine(x1, AffineForm(1, 0)) == 0
    assert distance_to_affine(x1, AffineForm(1, 1)) == 1 << n
    assert distance_to_affine(x1x2(), AffineForm(1, 0)) == 1


def test_distance_matches_walsh_exhaustive_n3():
    n = 3
    for t in range(1 << (1 << n)):
        f = BooleanFunction(n, t)
        spec, _ = walsh_spectrum_and_nonlinearity(f)
        for a in range(1 << n):
            assert distance_to_affine(f, AffineForm(a, 0)) == (1 << (n - 1)) - spec[a] // 2


def test_autocorrelation_examples():
    assert autocorrelation_profile(x1x2()) == (0, 2)
    f = BooleanFunction.variable(2, 1)
    r = autocorrelation(f)
    assert r[0b01] == -4
    assert autocorrelation_profile(f) == (4, 0)


@settings(max_examples=60, deadline=None)
@given(functions(max_n=6))
def test_autocorrelation_matches_naive(f):
    assert autocorrelation(f).tolist() == naive_autocorrelation(f)


# -- affine subspaces -----------------------------------------------------------


def test_coordinate_subspace_example():
    L = make_subspace(6, [AffineForm(1), AffineForm(2), AffineForm(4)])
    assert (L.codim, L.dim, len(L.points())) == (3, 3, 8)


def test_inconsistent_system():
    with pytest.raises(InconsistentSystemError):
        make_subspace(3, [(0b011, 0), (0b001, 0), (0b010, 1)])


def test_duplicate_rows_are_dropped():
    L = make_subspace(3, [(1, 1), (1, 1)])
    assert L.codim == 1


def test_degenerate_form_rejected():
    with pytest.raises(DegenerateFormError):
        make_subspace(3, [AffineForm(0, 1)])


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 8), st.data())
def test_subspace_points_satisfy_constraints(n, data):
    k = data.draw(st.integers(1, n))
    raw = [(data.draw(st.integers(1, (1 << n) - 1)), data.draw(st.integers(0, 1))) for _ in range(k)]
    try:
        L = make_subspace(n, raw)
    except InconsistentSystemError:
        # check by brute force that the system really has no solution
        assert not any(all(bin(x & m).count("1") % 2 == b for m, b in raw) for x in range(1 << n))
        return
    pts = L.points()
    assert len(set(pts.tolist())) == 1 << L.dim
    expect = {x for x in range(1 << n) if all(bin(x & m).count("1") % 2 == b for m, b in raw)}
    assert set(pts.tolist()) == expect
    pivots = L.pivots
    assert list(pivots) == sorted(set(pivots))
    for y in range(1 << L.dim):
        assert L.lift(y) == pts[y]


# -- restriction -----------------------------------------------------------------


def test_restrict_example():
    f = parse_anf("x1 + x2*x3", 3).truth_table()
    g = restrict(f, coordinate_subspace(3, {1: 1}))
    assert g == parse_anf("1 + x1*x2", 2).truth_table()


def test_restrict_last_coordinate_is_lower_half(rng):
    n = 6
    f = random_function(rng, n)
    g = restrict(f, coordinate_subspace(n, {n: 0}))
    assert g.table == f.table & ((1 << (1 << (n - 1))) - 1)


def test_restrict_to_point_rejected():
    with pytest.raises(ValueError):
        restrict(x1x2(), coordinate_subspace(2, {1: 1, 2: 1}))


@settings(max_examples=60, deadline=None)
@given(functions(min_n=3, max_n=8), st.data())
def test_restriction_composes(f, data):
    n = f.n
    coords = data.draw(st.lists(st.integers(1, n), min_size=1, max_size=n - 1, unique=True))
    bits = {i: data.draw(st.integers(0, 1)) for i in coords}
    combined = restrict(f, coordinate_subspace(n, bits))
    order = data.draw(st.permutations(coords))
    g = f
    remaining = list(range(1, n + 1))
    for i in order:
        j = remaining.index(i) + 1
        g = restrict(g, coordinate_subspace(g.n, {j: bits[i]}))
        remaining.remove(i)
    assert g == combined


@settings(max_examples=60, deadline=None)
@given(functions(min_n=2, max_n=8), st.data())
def test_restricted_count_identities(f, data):
    n = f.n
    k = data.draw(st.integers(1, n - 1))
    raw = [(data.draw(st.integers(1, (1 << n) - 1)), data.draw(st.integers(0, 1))) for _ in range(k)]
    try:
        L = make_subspace(n, raw)
    except InconsistentSystemError:
        return
    c1 = restricted_support_count(f, L)
    c0 = restricted_support_count(f.complement(), L)
    assert c1 + c0 == 1 << L.dim
    if L.dim >= 1:
        assert c1 == restrict(f, L).weight


def test_restricted_count_constant_one():
    L = coordinate_subspace(5, {2: 1, 4: 0})
    assert restricted_support_count(BooleanFunction.constant(5, 1), L) == 8


# -- text formats ------------------------------------------------------------------


def test_hex_examples():
    assert x1x2().to_hex() == "8"
    assert BooleanFunction.variable(2, 1).to_hex() == "A"
    assert BooleanFunction.from_hex("8") == x1x2()
    assert BooleanFunction.from_hex("A", 2) == BooleanFunction.variable(2, 1)


@settings(max_examples=60, deadline=None)
@given(functions(min_n=2, max_n=10))
def test_hex_round_trip(f):
    assert BooleanFunction.from_hex(f.to_hex(), f.n) == f
    assert BooleanFunction.from_hex(f.to_hex()) == f


def test_hex_errors():
    with pytest.raises(ParseError) as e:
        BooleanFunction.from_hex("8G")
    assert e.value.position == 1
    with pytest.raises(ParseError):
        BooleanFunction.from_hex("ABC")
    with pytest.raises(ParseError):
        BooleanFunction.from_hex("FF", 2)


def test_anf_parse_examples():
    assert parse_anf("x1*x2 + 1", 2).truth_table().table == 0b0111
    assert parse_anf("0", 3).is_zero()
    assert parse_anf("x1 + x1", 2).is_zero()
    assert parse_anf("  x2 *x1+1 ", 2) == parse_anf("1 + x1*x2", 2)


@pytest.mark.parametrize(
    "text, pos",
    [("x1 + ", 4), ("x1 ++ x2", 4), ("x1 x2", 3), ("x9", 0), ("x1 - x2", 3), ("", 0)],
)
def test_anf_parse_errors(text, pos):
    with pytest.raises(ParseError) as e:
        parse_anf(text, 3)
    assert e.value.position == pos


@settings(max_examples=60, deadline=None)
@given(functions(max_n=6))
def test_anf_text_round_trip(f):
    p = f.anf()
    text = format_anf(p)
    assert parse_anf(text, f.n) == p
    assert format_anf(parse_anf(text, f.n)) == text


def test_format_anf_order():
    assert format_anf(parse_anf("x3 + x1*x2 + 1 + x2", 3)) == "1 + x2 + x3 + x1*x2"
