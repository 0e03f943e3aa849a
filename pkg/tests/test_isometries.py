import numpy as np
import pytest
from hypothesis import given, strategies as st

from chgeom.errors import BadDeterminant, NotUnitary
from chgeom.fixtures import (
    B_BLOCK,
    B_REAL,
    ELLIPTIC_E,
    LOX_A,
    PARABOLIC_T,
    SWAP_S,
    random_element,
    random_fixture_product,
    random_interior_points,
)
from chgeom.hermitian import INF_VECTOR, ORIGIN_VECTOR, PointClass, ProjectivePoint, bergman_distance
from chgeom.isometries import (
    IDENTITY,
    IsometryClass,
    apply,
    char_poly_coefficients,
    classify,
    conjugate,
    cubic_roots,
    eigen,
    fixed_points,
    identity_residuals,
    inverse,
    is_identity,
    is_real_trace,
    normalize_to_su21,
    trace,
    validate,
)

seeds = st.integers(0, 2**32 - 1)


def test_validate_examples():
    validate(np.eye(3))
    validate(np.diag([2, 1, 0.5]))
    with pytest.raises(BadDeterminant) as err:
        validate(np.diag([2, 1, 1]))
    assert err.value.det == pytest.approx(2)


def test_validate_rejects_form_violation():
    m = np.diag([2.0, 1.0, 0.5]).astype(complex)
    m[0, 1] = 0.1
    with pytest.raises(NotUnitary):
        validate(m)


def test_fixture_library_validates():
    for g in (B_REAL, B_BLOCK, PARABOLIC_T, ELLIPTIC_E, SWAP_S, LOX_A):
        assert max(abs(r) for r in identity_residuals(g).values()) <= 1e-15


def test_twelve_identities_listed():
    res = identity_residuals(B_REAL)
    assert len(res) == 12
    assert "a*j' + b*h' + c*g' = 1" in res and "c*j' + f*f' + j*c' = 0" in res


def test_normalize_minus_identity():
    g = normalize_to_su21(-np.eye(3))
    np.testing.assert_allclose(g.matrix, np.exp(2j * np.pi / 3) * np.eye(3), atol=1e-15)
    assert np.linalg.det(g.matrix) == pytest.approx(1)


def test_normalize_examples():
    np.testing.assert_allclose(normalize_to_su21(B_REAL).matrix, B_REAL.matrix, atol=1e-15)
    with pytest.raises(NotUnitary):
        normalize_to_su21(np.diag([2, 1, 1]))


def test_inverse_examples():
    np.testing.assert_allclose(inverse(LOX_A).matrix, np.diag([0.5, 1, 2]))
    expected = [[1.25, 0, -0.75j], [0, 1, 0], [0.75j, 0, 1.25]]
    np.testing.assert_allclose(inverse(B_BLOCK).matrix, expected)
    np.testing.assert_allclose(B_BLOCK.matrix @ inverse(B_BLOCK).matrix, np.eye(3), atol=1e-15)


@given(seeds)
def test_inverse_matches_linear_solve(seed):
    rng = np.random.default_rng(seed)
    m = random_fixture_product(rng, length=3).matrix
    np.testing.assert_allclose(inverse(m).matrix, np.linalg.solve(m, np.eye(3)), atol=1e-10)


@given(seeds, seeds)
def test_product_closure(s1, s2):
    a = random_element(np.random.default_rng(s1))
    b = random_fixture_product(np.random.default_rng(s2), length=2)
    validate(a @ b)


def test_apply_examples():
    assert apply(LOX_A, ORIGIN_VECTOR) == ProjectivePoint.origin()
    img = apply(B_BLOCK, INF_VECTOR)
    assert img == ProjectivePoint([1.25, 0, -0.75j])
    z1, z2 = img.coordinates()
    assert z1 == pytest.approx(5j / 3) and z2 == 0
    assert img.point_class is PointClass.BOUNDARY
    b0 = apply(B_REAL, ORIGIN_VECTOR)
    assert b0 == ProjectivePoint([B_REAL.c, B_REAL.f, B_REAL.j])


@given(seeds)
def test_apply_preserves_class(seed):
    rng = np.random.default_rng(seed)
    m = random_element(rng)
    for v, cls in (([0, 0, 1], PointClass.BOUNDARY), ([-1, 0, 1], PointClass.INTERIOR),
                   ([0, 1, 0], PointClass.EXTERIOR)):
        assert apply(m, v).point_class is cls


def test_eigen_diagonal():
    es = eigen(LOX_A)
    np.testing.assert_allclose(es.values, [2, 1, 0.5], atol=1e-14)
    for p, e in zip(es.pairs, np.eye(3)):
        assert ProjectivePoint(p.vector) == ProjectivePoint(e)
    assert not es.defective


def test_eigen_unipotent_is_defective():
    es = eigen(PARABOLIC_T)
    np.testing.assert_allclose(es.values, [1, 1, 1], atol=1e-12)
    assert es.defective


def test_eigen_elliptic():
    es = eigen(ELLIPTIC_E)
    np.testing.assert_allclose(sorted(es.values, key=lambda z: z.imag), [-1, 1j, 1j], atol=1e-12)
    np.testing.assert_allclose(np.abs(es.values), 1, atol=1e-12)


def test_cubic_roots_against_numpy(rng):
    for _ in range(200):
        m = random_element(rng).matrix
        roots = np.array(cubic_roots(*char_poly_coefficients(m)))
        ref = np.linalg.eigvals(m)
        for r in ref:
            assert np.min(np.abs(roots - r)) <= 1e-9 * max(1, abs(r))


@given(seeds)
def test_eigenpairs_residual(seed):
    m = random_element(np.random.default_rng(seed)).matrix
    es = eigen(m)
    for p in es.pairs:
        assert np.linalg.norm(m @ p.vector - p.value * p.vector) <= 1e-8 * np.linalg.norm(m)
    assert np.prod(es.values) == pytest.approx(1, abs=1e-8)
    mods = np.abs(es.values)
    assert np.all(mods[:-1] >= mods[1:] - 1e-12)


@pytest.mark.parametrize(
    "M, expected",
    [
        (LOX_A, IsometryClass.LOXODROMIC),
        (PARABOLIC_T, IsometryClass.PARABOLIC),
        (ELLIPTIC_E, IsometryClass.ELLIPTIC),
        (IDENTITY, IsometryClass.ELLIPTIC),
        (B_REAL, IsometryClass.ELLIPTIC),
    ],
)
def test_classify_examples(M, expected):
    assert classify(M) is expected


def test_identity_flag():
    assert is_identity(IDENTITY) and not is_identity(ELLIPTIC_E)


@given(seeds)
def test_classify_conjugation_invariant(seed):
    rng = np.random.default_rng(seed)
    q = random_element(rng)
    for m in (LOX_A, PARABOLIC_T, ELLIPTIC_E, B_BLOCK):
        assert classify(conjugate(m, q)) is classify(m)


def test_fixed_points_loxodromic():
    fps = fixed_points(LOX_A)
    boundary = [fp for fp in fps if fp.point_class is PointClass.BOUNDARY]
    assert len(boundary) == 2
    assert boundary[0].point == ProjectivePoint.infinity() and boundary[0].role == "attracting"
    assert boundary[1].point == ProjectivePoint.origin() and boundary[1].role == "repelling"
    assert any(fp.point == ProjectivePoint([0, 1, 0]) and fp.point_class is PointClass.EXTERIOR
               for fp in fps)


def test_fixed_points_parabolic():
    fps = fixed_points(PARABOLIC_T)
    assert len(fps) == 1
    assert fps[0].point == ProjectivePoint.infinity()
    assert fps[0].point_class is PointClass.BOUNDARY


def test_fixed_points_elliptic_interior():
    fps = fixed_points(ELLIPTIC_E)
    interior = [fp for fp in fps if fp.point_class is PointClass.INTERIOR]
    assert interior and interior[0].point == ProjectivePoint([-1, 0, 1])


@given(seeds)
def test_loxodromic_two_boundary_fixed_points(seed):
    rng = np.random.default_rng(seed)
    q = random_element(rng)
    m = conjugate(LOX_A, q)
    boundary = [fp for fp in fixed_points(m) if fp.point_class is PointClass.BOUNDARY]
    assert len(boundary) == 2
    for z, w in zip(*[iter(random_interior_points(rng, 4))] * 2):
        assert bergman_distance(m.matrix @ z, m.matrix @ w) == pytest.approx(
            bergman_distance(z, w), abs=1e-9)


def test_trace_examples():
    assert trace(LOX_A) == 3.5 and is_real_trace(LOX_A)
    assert trace(ELLIPTIC_E) == -1 + 2j and not is_real_trace(ELLIPTIC_E)
    assert trace(B_BLOCK) == 3.5 and is_real_trace(B_BLOCK)


def test_conjugate_examples():
    np.testing.assert_allclose(conjugate(B_REAL, IDENTITY).matrix, B_REAL.matrix)
    np.testing.assert_allclose(conjugate(LOX_A, SWAP_S).matrix, np.diag([0.5, 1, 2]), atol=1e-15)


@given(seeds)
def test_conjugate_preserves_trace(seed):
    rng = np.random.default_rng(seed)
    m, q = random_fixture_product(rng, 3), random_element(rng)
    c = conjugate(m, q)
    validate(c)
    assert abs(trace(c) - trace(m)) <= 1e-10 * max(1, abs(trace(m)))


def test_entry_names():
    assert (B_REAL.a, B_REAL.c, B_REAL.g, B_REAL.j) == (0.5, -0.25, -1, 0.5)
    with pytest.raises(AttributeError):
        B_REAL.k
