"""Elements of SU(2,1): validation, inverse, action and classification."""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import BadDeterminant, NotUnitary
from .hermitian import (
    EPS_PT,
    J,
    PointClass,
    ProjectivePoint,
    as_vector,
    hermitian_form,
)

EPS_GRP = 1e-9
EPS_EIG = 1e-8
EPS_TR = 1e-8

_ENTRY_NAMES = ("a", "b", "c", "d", "e", "f", "g", "h", "j")
_MACHINE_EPS = np.finfo(float).eps


class IsometryClass(Enum):
    LOXODROMIC = "loxodromic"
    PARABOLIC = "parabolic"
    ELLIPTIC = "elliptic"


@dataclass(frozen=True, eq=False)
class GroupElement:
    """A 3x3 complex matrix treated as an element of SU(2,1).

    Construction does not check anything; use :func:`validate` for untrusted
    input. Entries are available by name, row by row ``a b c / d e f / g h j``.
    """

    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (3, 3):
            raise ValueError(f"expected a 3x3 matrix, got shape {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def __getattr__(self, name):
        if name in _ENTRY_NAMES:
            i = _ENTRY_NAMES.index(name)
            return complex(self.matrix[i // 3, i % 3])
        raise AttributeError(name)

    def __matmul__(self, other):
        if isinstance(other, GroupElement):
            return GroupElement(self.matrix @ other.matrix)
        return NotImplemented

    @property
    def inv(self):
        return inverse(self)

    def trace(self):
        return complex(np.trace(self.matrix))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)

    def __repr__(self):
        return f"GroupElement({np.array2string(self.matrix, precision=6)})"


IDENTITY = GroupElement(np.eye(3))


def _as_matrix(M):
    if isinstance(M, GroupElement):
        return M.matrix
    return np.asarray(M, dtype=complex)


def identity_residuals(M):
    """The twelve entrywise identities forced by unitarity for the form.

    Returns a dict mapping each identity (written in entry names) to the
    value ``lhs - rhs``. They are entries of ``M M^-1`` and ``M^-1 M`` with
    the closed-form inverse substituted.
    """
    a, b, c, d, e, f, g, h, j = _as_matrix(M).ravel()
    cj = np.conj
    return {
        "a*j' + b*h' + c*g' = 1": a * cj(j) + b * cj(h) + c * cj(g) - 1,
        "a*f' + b*e' + c*d' = 0": a * cj(f) + b * cj(e) + c * cj(d),
        "a*c' + b*b' + c*a' = 0": a * cj(c) + b * cj(b) + c * cj(a),
        "d*j' + e*h' + f*g' = 0": d * cj(j) + e * cj(h) + f * cj(g),
        "d*f' + e*e' + f*d' = 1": d * cj(f) + e * cj(e) + f * cj(d) - 1,
        "g*j' + h*h' + j*g' = 0": g * cj(j) + h * cj(h) + j * cj(g),
        "a*j' + d*f' + g*c' = 1": a * cj(j) + d * cj(f) + g * cj(c) - 1,
        "b*j' + e*f' + h*c' = 0": b * cj(j) + e * cj(f) + h * cj(c),
        "c*j' + f*f' + j*c' = 0": c * cj(j) + f * cj(f) + j * cj(c),
        "a*h' + d*e' + g*b' = 0": a * cj(h) + d * cj(e) + g * cj(b),
        "b*h' + e*e' + h*b' = 1": b * cj(h) + e * cj(e) + h * cj(b) - 1,
        "a*g' + d*d' + g*a' = 0": a * cj(g) + d * cj(d) + g * cj(a),
    }


def form_residual(M):
    """max |M^H J M - J| over entries."""
    m = _as_matrix(M)
    return float(np.max(np.abs(m.conj().T @ J @ m - J)))


def _grid_scale(m):
    # products of entries enter the identities, so scale with |M|^2
    return max(1.0, float(np.max(np.abs(m))) ** 2)


def validate(M, eps_grp=EPS_GRP):
    """Check determinant and form preservation, returning a GroupElement."""
    m = _as_matrix(M)
    if m.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NotUnitary("matrix has non-finite entries")
    det = complex(np.linalg.det(m))
    if abs(det - 1) > eps_grp * _grid_scale(m):
        raise BadDeterminant(f"determinant is {det!r}, not 1", det=det)
    grid = max(abs(r) for r in identity_residuals(m).values())
    residual = max(grid, form_residual(m))
    if residual > eps_grp * _grid_scale(m):
        raise NotUnitary(f"identity grid violated (max residual {residual:.3g})", residual)
    return GroupElement(m)


def normalize_to_su21(M, eps_grp=EPS_GRP):
    """Divide by the principal cube root of det(M) and validate."""
    m = _as_matrix(M)
    det = complex(np.linalg.det(m))
    if det == 0:
        raise NotUnitary("singular matrix cannot preserve the form")
    root = det ** (1.0 / 3.0)
    try:
        return validate(m / root, eps_grp)
    except BadDeterminant as exc:
        raise NotUnitary(f"rescaling does not fix the form test: {exc}") from exc


def inverse(M):
    """Closed-form inverse J M^H J of an element of SU(2,1)."""
    return GroupElement(J @ _as_matrix(M).conj().T @ J)


def apply(M, p, eps_pt=EPS_PT):
    """Projective action p -> M p."""
    return ProjectivePoint(_as_matrix(M) @ as_vector(p), eps_pt)


def trace(M):
    return complex(np.trace(_as_matrix(M)))


def is_real_trace(M, eps_tr=EPS_TR):
    return abs(trace(M).imag) <= eps_tr


def conjugate(M, Q):
    """Q^-1 M Q, with the closed-form inverse of Q."""
    q = _as_matrix(Q)
    return GroupElement(inverse(q).matrix @ _as_matrix(M) @ q)


# ---------------------------------------------------------------------------
# eigen-structure


def _cube_root(z):
    return complex(z) ** (1.0 / 3.0) if z != 0 else 0j


def char_poly_coefficients(M):
    """(trace, sum of principal 2x2 minors, det) of M."""
    m = _as_matrix(M)
    tr = complex(np.trace(m))
    minors = (
        m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        + m[0, 0] * m[2, 2] - m[0, 2] * m[2, 0]
        + m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1]
    )
    return tr, complex(minors), complex(np.linalg.det(m))


def cubic_roots(tr, sigma, det):
    """Roots of x^3 - tr x^2 + sigma x - det by Cardano, Newton-polished."""
    shift = tr / 3
    p = sigma - tr * tr / 3
    q = -2 * tr**3 / 27 + tr * sigma / 3 - det
    disc = np.sqrt(complex(q * q / 4 + p**3 / 27))
    # pick the sign that avoids cancellation
    w = -q / 2 + disc if abs(-q / 2 + disc) >= abs(-q / 2 - disc) else -q / 2 - disc
    u = _cube_root(w)
    omega = complex(-0.5, np.sqrt(3) / 2)
    roots = []
    for k in range(3):
        uk = u * omega**k
        x = uk - p / (3 * uk) if uk != 0 else 0j
        roots.append(x + shift)

    def poly(x):
        return ((x - tr) * x + sigma) * x - det

    def dpoly(x):
        return (3 * x - 2 * tr) * x + sigma

    polished = []
    for r in roots:
        for _ in range(2):
            d = dpoly(r)
            if abs(d) < 1e-8 * max(1.0, abs(r)) ** 2:
                break
            step = poly(r) / d
            if not np.isfinite(step) or abs(step) > 1e-3 * max(1.0, abs(r)):
                break
            r = r - step
        polished.append(complex(r))
    return polished


def cluster_radius(M, eps_eig=EPS_EIG):
    """Radius below which computed eigenvalues are treated as one root.

    A triple root of a defective matrix splits by about (u * |M|^2)^(1/3)
    under rounding u, so the radius grows with that bound.
    """
    m = _as_matrix(M)
    kappa = float(np.linalg.norm(m)) ** 2
    return max(10 * eps_eig, 10 * (_MACHINE_EPS * kappa) ** (1.0 / 3.0))


def _clusters(values, radius):
    """Single-linkage groups of indices into ``values``."""
    groups = []
    for i, v in enumerate(values):
        hits = [g for g in groups if any(abs(values[k] - v) <= radius for k in g)]
        merged = [i]
        for g in hits:
            merged.extend(g)
            groups.remove(g)
        groups.append(sorted(merged))
    return groups


def _null_basis(N, tol):
    """Right null vectors of N whose singular values fall below ``tol``."""
    _, s, vh = np.linalg.svd(N)
    k = int(np.sum(s <= tol))
    return [vh[-1 - i].conj() for i in range(k)][::-1], s


def _simple_eigenvector(m, lam):
    # cross product of the two most independent rows of (M - lam I)
    n = m - lam * np.eye(3)
    best = None
    for i, k in ((0, 1), (0, 2), (1, 2)):
        v = np.cross(n[i], n[k])
        if best is None or np.linalg.norm(v) > np.linalg.norm(best):
            best = v
    if np.linalg.norm(best) < 1e-14 * max(1.0, np.linalg.norm(n)) ** 2:
        best = np.linalg.svd(n)[2][-1].conj()
    v = best / np.linalg.norm(best)
    # one step of inverse iteration
    shift = 1e-10 * max(1.0, np.linalg.norm(m))
    try:
        w = np.linalg.solve(n + shift * np.eye(3), v)
        if np.all(np.isfinite(w)) and np.linalg.norm(w) > 0:
            v = w / np.linalg.norm(w)
    except np.linalg.LinAlgError:
        pass
    return v


@dataclass(frozen=True)
class EigenPair:
    value: complex
    vector: np.ndarray


@dataclass(frozen=True)
class EigenStructure:
    """Eigenpairs sorted by descending eigenvalue modulus.

    For a defective cluster the missing eigenvectors are replaced by
    generalized eigenvectors and ``defective`` is set.
    """

    pairs: tuple
    defective: bool
    clusters: tuple

    @property
    def values(self):
        return np.array([p.value for p in self.pairs])

    @property
    def vectors(self):
        return np.column_stack([p.vector for p in self.pairs])


def eigen(M, eps_eig=EPS_EIG):
    m = _as_matrix(M)
    tr, sigma, det = char_poly_coefficients(m)
    raw = cubic_roots(tr, sigma, det)
    radius = cluster_radius(m, eps_eig)
    groups = _clusters(raw, radius)
    null_tol = radius * max(1.0, float(np.linalg.norm(m, 2)))

    pairs = []
    defective = False
    cluster_info = []
    for g in groups:
        mult = len(g)
        if mult == 1:
            lam = raw[g[0]]
            pairs.append(EigenPair(lam, _simple_eigenvector(m, lam)))
            cluster_info.append((lam, 1, 1))
            continue
        # the trace fixes the cluster centre far better than the split roots
        others = sum(raw[k] for k in range(3) if k not in g)
        mu = complex((tr - others) / mult)
        n = m - mu * np.eye(3)
        basis, s = _null_basis(n, null_tol)
        if not basis:
            basis = [np.linalg.svd(n)[2][-1].conj()]
        nullity = len(basis)
        if nullity < mult:
            defective = True
            gen, _ = _null_basis(np.linalg.matrix_power(n, mult), null_tol * max(1.0, s[0]) ** (mult - 1))
            span = np.column_stack(basis)
            for v in gen:
                if len(basis) == mult:
                    break
                resid = v - span @ np.linalg.lstsq(span, v, rcond=None)[0]
                if np.linalg.norm(resid) > 1e-6:
                    basis.append(resid / np.linalg.norm(resid))
                    span = np.column_stack(basis)
        for v in basis[:mult]:
            pairs.append(EigenPair(mu, v / np.linalg.norm(v)))
        cluster_info.append((mu, mult, nullity))

    pairs.sort(key=lambda p: -abs(p.value))
    return EigenStructure(tuple(pairs), defective, tuple(cluster_info))


def is_identity(M, tol=EPS_GRP):
    return float(np.max(np.abs(_as_matrix(M) - np.eye(3)))) <= tol


def classify(M, eps_eig=EPS_EIG):
    """Loxodromic / parabolic / elliptic from the eigen-structure.

    Loxodromic if some (clustered) eigenvalue has modulus above 1 + eps_eig,
    elliptic if M is diagonalizable, parabolic otherwise. The identity is
    reported as elliptic.
    """
    es = eigen(M, eps_eig)
    if any(abs(mu) > 1 + eps_eig for mu, _, _ in es.clusters):
        return IsometryClass.LOXODROMIC
    if es.defective:
        return IsometryClass.PARABOLIC
    return IsometryClass.ELLIPTIC


@dataclass(frozen=True)
class FixedPoint:
    point: ProjectivePoint
    point_class: PointClass
    eigenvalue: complex
    role: str = ""


def _form_adapted_basis(vectors):
    """Basis of span(vectors) diagonalizing the restricted Hermitian form."""
    v = np.column_stack(vectors)
    gram = v.conj().T @ J @ v
    _, w = np.linalg.eigh((gram + gram.conj().T) / 2)
    return [v @ w[:, i] for i in range(w.shape[1])]


def fixed_points(M, eps_eig=EPS_EIG, eps_pt=EPS_PT):
    """Projectivized eigenvectors of M with their point classes.

    Multi-dimensional eigenspaces are reported through a basis that
    diagonalizes the form, so negative (interior) directions show up
    explicitly. Loxodromic attracting/repelling points are labelled.
    """
    m = _as_matrix(M)
    es = eigen(m, eps_eig)
    lox = any(abs(mu) > 1 + eps_eig for mu, _, _ in es.clusters)
    out = []
    radius = cluster_radius(m, eps_eig)
    null_tol = radius * max(1.0, float(np.linalg.norm(m, 2)))
    for mu, mult, nullity in es.clusters:
        if mult == 1:
            vecs = [p.vector for p in es.pairs if p.value == mu]
        else:
            vecs, _ = _null_basis(m - mu * np.eye(3), null_tol)
            if not vecs:
                vecs = [np.linalg.svd(m - mu * np.eye(3))[2][-1].conj()]
            if len(vecs) > 1:
                vecs = _form_adapted_basis(vecs)
        for v in vecs:
            p = ProjectivePoint(v, eps_pt)
            role = ""
            if lox and p.point_class is PointClass.BOUNDARY:
                role = "attracting" if abs(mu) > 1 else "repelling"
            out.append(FixedPoint(p, p.point_class, complex(mu), role))
    out.sort(key=lambda fp: -abs(fp.eigenvalue))
    return out


def preserves_form(M, tol=EPS_GRP):
    return form_residual(M) <= tol * _grid_scale(_as_matrix(M))


def pairing_preserved(M, z, w):
    """|<Mz, Mw> - <z, w>|, a convenience for tests and reports."""
    m = _as_matrix(M)
    return abs(hermitian_form(m @ as_vector(z), m @ as_vector(w)) - hermitian_form(z, w))
