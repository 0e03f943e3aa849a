"""The Hermitian space C^{2,1} and its projectivization (Siegel domain).

The form is ``<z, w> = z1 conj(w3) + z2 conj(w2) + z3 conj(w1)``, i.e.
``w^H J z`` with ``J`` the 3x3 anti-diagonal matrix of ones. Negative vectors
project to complex hyperbolic space, null vectors to its boundary.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import NotInterior, ZeroVector

J = np.fliplr(np.eye(3)).astype(complex)
J.setflags(write=False)

INF_VECTOR = np.array([1.0, 0.0, 0.0], dtype=complex)
ORIGIN_VECTOR = np.array([0.0, 0.0, 1.0], dtype=complex)

EPS_PT = 1e-9
# below this the cosh^2 ratio cannot come from two interior points
_COSH2_FLOOR = 1.0 - 1e-6


class PointClass(Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


def as_vector(v):
    if isinstance(v, ProjectivePoint):
        return v.vector
    arr = np.asarray(v, dtype=complex)
    if arr.shape != (3,):
        raise ValueError(f"expected a vector with 3 coordinates, got shape {arr.shape}")
    return arr


def hermitian_form(z, w):
    """Return <z, w> = z1 conj(w3) + z2 conj(w2) + z3 conj(w1)."""
    z = as_vector(z)
    w = as_vector(w)
    return complex(z[0] * np.conj(w[2]) + z[1] * np.conj(w[1]) + z[2] * np.conj(w[0]))


def hermitian_norm(v):
    """<v, v>, which is real for every v."""
    return hermitian_form(v, v).real


def normalize_max(v, tol=0.0):
    """Scale ``v`` so its largest-magnitude coordinate equals exactly 1."""
    v = as_vector(v)
    k = int(np.argmax(np.abs(v)))
    if abs(v[k]) <= tol or v[k] == 0:
        raise ZeroVector("vector has no coordinate above tolerance")
    out = v / v[k]
    out[k] = 1.0
    return out


def standard_lift(z1, z2):
    """Standard lift (z1, z2, 1) of a finite point of C^2."""
    return np.array([z1, z2, 1.0], dtype=complex)


def classify_point(v, eps_pt=EPS_PT):
    """Sign of <v, v> after max-normalization of the representative."""
    u = normalize_max(v, tol=eps_pt)
    q = hermitian_norm(u)
    if q < -eps_pt:
        return PointClass.INTERIOR
    if q > eps_pt:
        return PointClass.EXTERIOR
    return PointClass.BOUNDARY


def projective_defect(u, v):
    """Distance between the projective classes of ``u`` and ``v``.

    Both vectors are divided by their coordinate at the index where ``u`` is
    largest; the result is the max coordinate difference, or ``inf`` when
    ``v`` vanishes there.
    """
    u = as_vector(u)
    v = as_vector(v)
    k = int(np.argmax(np.abs(u)))
    if u[k] == 0:
        raise ZeroVector("zero vector has no projective class")
    scale = np.max(np.abs(v))
    if scale == 0 or abs(v[k]) <= 1e-12 * scale:
        return float("inf")
    return float(np.max(np.abs(u / u[k] - v / v[k])))


@dataclass(frozen=True, eq=False)
class ProjectivePoint:
    """A point of CP^2 given by a max-normalized representative.

    Equality is projective: two points compare equal when their normalized
    coordinates agree to 1e-9.
    """

    vector: np.ndarray
    point_class: PointClass

    EQ_TOL = 1e-9

    def __init__(self, v, eps_pt=EPS_PT):
        u = normalize_max(v, tol=0.0)
        u.setflags(write=False)
        object.__setattr__(self, "vector", u)
        object.__setattr__(self, "point_class", classify_point(u, eps_pt))

    @classmethod
    def finite(cls, z1, z2, eps_pt=EPS_PT):
        return cls(standard_lift(z1, z2), eps_pt)

    @classmethod
    def infinity(cls):
        return cls(INF_VECTOR)

    @classmethod
    def origin(cls):
        return cls(ORIGIN_VECTOR)

    def is_infinity(self, tol=1e-12):
        return abs(self.vector[1]) <= tol and abs(self.vector[2]) <= tol

    def coordinates(self):
        """Non-homogeneous coordinates (z1, z2); None for the point at infinity."""
        v = self.vector
        if abs(v[2]) <= 1e-14 * np.max(np.abs(v)):
            return None
        return complex(v[0] / v[2]), complex(v[1] / v[2])

    def same_as(self, other, tol=EQ_TOL):
        return projective_defect(self.vector, as_vector(other)) <= tol

    def __eq__(self, other):
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        return self.same_as(other)

    __hash__ = None

    def __repr__(self):
        coords = self.coordinates()
        if coords is not None:
            where = f"({coords[0]:.6g}, {coords[1]:.6g})"
        elif self.is_infinity():
            where = "inf"
        else:
            where = np.array2string(self.vector, precision=6)
        return f"ProjectivePoint({where}, {self.point_class.value})"


def bergman_distance(z, w, eps_pt=EPS_PT):
    """Bergman distance rho with cosh^2(rho/2) = <z,w><w,z> / (<z,z><w,w>)."""
    zv = normalize_max(as_vector(z))
    wv = normalize_max(as_vector(w))
    for v in (zv, wv):
        if classify_point(v, eps_pt) is not PointClass.INTERIOR:
            raise NotInterior("Bergman distance needs two interior points")
    zw = hermitian_form(zv, wv)
    cosh2 = (zw * zw.conjugate()).real / (hermitian_norm(zv) * hermitian_norm(wv))
    if cosh2 < _COSH2_FLOOR:
        raise NotInterior(f"cosh^2 ratio {cosh2!r} is below 1; inputs are not interior")
    cosh2 = max(cosh2, 1.0)
    return float(2.0 * np.arccosh(np.sqrt(cosh2)))
