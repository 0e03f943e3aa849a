import numpy as np
import pytest
from hypothesis import given, strategies as st

from chgeom.errors import DegenerateQuadruple, DegenerateTriple
from chgeom.fixtures import (
    B_BLOCK,
    B_REAL,
    lagrangian_boundary_points,
    line_boundary_points,
    random_boundary_points,
    random_element,
    random_fixture_product,
)
from chgeom.hermitian import INF_VECTOR, ORIGIN_VECTOR, standard_lift
from chgeom.invariants import (
    Coplanarity,
    cartan_invariant,
    coplanarity_test,
    kr_cross_ratio,
    pp_cross_ratios,
)

seeds = st.integers(0, 2**32 - 1)
J = np.fliplr(np.eye(3))


def pair(z, w):
    return np.conj(w) @ J @ z


def oracle_cross(z1, z2, z3, z4):
    return pair(z3, z1) * pair(z4, z2) / (pair(z4, z1) * pair(z3, z2))


def proof_quadruple(B):
    m = B.matrix
    return [m @ ORIGIN_VECTOR, INF_VECTOR, ORIGIN_VECTOR, m @ INF_VECTOR]


def test_cartan_examples():
    assert cartan_invariant(ORIGIN_VECTOR, INF_VECTOR, standard_lift(-0.5, 1)) == 0
    assert cartan_invariant(ORIGIN_VECTOR, INF_VECTOR, standard_lift(1j, 0)) == pytest.approx(-np.pi / 2)


def test_cartan_degenerate():
    with pytest.raises(DegenerateTriple):
        cartan_invariant(ORIGIN_VECTOR, ORIGIN_VECTOR * 2, INF_VECTOR)
    with pytest.raises(DegenerateTriple):
        cartan_invariant(ORIGIN_VECTOR, INF_VECTOR, standard_lift(-1, 0))


@given(seeds)
def test_cartan_range_and_invariance(seed):
    rng = np.random.default_rng(seed)
    pts = random_boundary_points(rng, 3)
    angle = cartan_invariant(*pts)
    assert -np.pi / 2 - 1e-9 <= angle <= np.pi / 2 + 1e-9
    m = random_fixture_product(rng, 3).matrix
    assert cartan_invariant(*(m @ p for p in pts)) == pytest.approx(angle, abs=1e-9)
    scaled = [p * complex(*rng.normal(size=2)) for p in pts]
    assert cartan_invariant(*scaled) == pytest.approx(angle, abs=1e-10)


@given(seeds)
def test_cartan_on_complex_line_and_lagrangian(seed):
    rng = np.random.default_rng(seed)
    q = random_element(rng).matrix
    line = [q @ p for p in line_boundary_points(rng, 3)]
    assert abs(cartan_invariant(*line)) == pytest.approx(np.pi / 2, abs=1e-8)
    lag = [q @ p for p in lagrangian_boundary_points(rng, 3)]
    assert cartan_invariant(*lag) == pytest.approx(0, abs=1e-8)


def test_kr_examples():
    assert kr_cross_ratio(*proof_quadruple(B_REAL)) == pytest.approx(0.25, abs=1e-15)
    b = B_REAL
    assert kr_cross_ratio(*proof_quadruple(b)) == pytest.approx(b.g * np.conj(b.c))


@given(seeds)
def test_kr_invariance_and_lift_independence(seed):
    rng = np.random.default_rng(seed)
    pts = random_boundary_points(rng, 4)
    x = kr_cross_ratio(*pts)
    assert x == pytest.approx(oracle_cross(*pts), rel=1e-12)
    q = random_element(rng).matrix
    assert kr_cross_ratio(*(q @ p for p in pts)) == pytest.approx(x, rel=1e-10)
    scaled = [p * complex(*rng.normal(size=2)) for p in pts]
    assert kr_cross_ratio(*scaled) == pytest.approx(x, rel=1e-10)


def test_kr_degenerate():
    with pytest.raises(DegenerateQuadruple):
        kr_cross_ratio(ORIGIN_VECTOR, INF_VECTOR, ORIGIN_VECTOR, standard_lift(1j, 0))


def test_pp_triple_real_fixture():
    t = pp_cross_ratios(*proof_quadruple(B_REAL))
    np.testing.assert_allclose(t.as_tuple(), (0.25, 0.25, 1.0), atol=1e-15)


def test_pp_triple_block_fixture():
    # direct evaluation: g conj(c) = (-3i/4)(-3i/4) = -9/16, a conj(j) = 25/16,
    # aj/(gc) = (25/16) / (9/16)
    t = pp_cross_ratios(*proof_quadruple(B_BLOCK))
    np.testing.assert_allclose(t.as_tuple(), (-9 / 16, 25 / 16, 25 / 9), atol=1e-14)
    assert t.X3 == pytest.approx(-t.X2 / t.X1)


@given(seeds)
def test_pp_matches_entry_formula(seed):
    b = random_element(np.random.default_rng(seed), scale=1.0)
    if min(abs(b.c), abs(b.g)) < 1e-3:
        return
    t = pp_cross_ratios(*proof_quadruple(b))
    expected = (b.g * np.conj(b.c), b.a * np.conj(b.j), b.a * b.j / (b.g * b.c))
    for got, want in zip(t.as_tuple(), expected):
        assert abs(got - want) <= 1e-9 * max(1, abs(want))
    assert abs(t.X1 - oracle_cross(*proof_quadruple(b))) <= 1e-9 * max(1, abs(t.X1))


def test_coplanarity_fixtures():
    assert coplanarity_test(*proof_quadruple(B_REAL)).kind is Coplanarity.LAGRANGIAN
    assert coplanarity_test(*proof_quadruple(B_BLOCK)).kind is Coplanarity.COMPLEX_LINE


def test_coplanarity_random_points_golden():
    pts = random_boundary_points(np.random.default_rng(11), 4)
    verdict = coplanarity_test(*pts)
    assert verdict.kind is Coplanarity.NEITHER
    # frozen from this seed; cross-checked against the numpy oracle below
    assert verdict.triple.X1 == pytest.approx(0.10431509316451333 - 0.7583160162198818j, abs=1e-12)
    assert verdict.triple.X1 == pytest.approx(oracle_cross(*pts), abs=1e-12)


@given(seeds)
def test_coplanarity_pushed_configurations(seed):
    rng = np.random.default_rng(seed)
    q = random_element(rng).matrix
    line = [q @ p for p in line_boundary_points(rng, 4)]
    lag = [q @ p for p in lagrangian_boundary_points(rng, 4)]
    assert coplanarity_test(*line).kind is Coplanarity.COMPLEX_LINE
    assert coplanarity_test(*lag).kind is Coplanarity.LAGRANGIAN
