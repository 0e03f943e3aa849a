"""Totally geodesic submanifolds: complex lines and Lagrangian planes.

A complex line is stored through its positive polar vector. A Lagrangian
plane is stored as an antiholomorphic involution ``p -> M conj(p)`` whose
fixed set is the plane; the standard plane of real points has ``M = I``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import GeometryError
from .hermitian import (
    J,
    PointClass,
    as_vector,
    classify_point,
    hermitian_form,
    hermitian_norm,
    normalize_max,
    projective_defect,
)
from .isometries import _as_matrix

EPS_MEMBER = 1e-8


def _canonical_polar(n):
    n = as_vector(n)
    if classify_point(n) is not PointClass.EXTERIOR:
        raise GeometryError("polar vector of a complex line must be positive")
    n = n / np.sqrt(hermitian_norm(n))
    k = int(np.argmax(np.abs(n)))
    return n * (abs(n[k]) / n[k])


@dataclass(frozen=True, eq=False)
class ComplexLine:
    polar: np.ndarray

    def __post_init__(self):
        n = _canonical_polar(self.polar)
        n.setflags(write=False)
        object.__setattr__(self, "polar", n)

    def same_as(self, other, tol=EPS_MEMBER):
        return projective_defect(self.polar, other.polar) <= tol


@dataclass(frozen=True, eq=False)
class LagrangianPlane:
    involution: np.ndarray

    def __post_init__(self):
        m = np.array(self.involution, dtype=complex)
        m.setflags(write=False)
        object.__setattr__(self, "involution", m)

    def reflect(self, p):
        return self.involution @ np.conj(as_vector(p))

    def involution_residual(self):
        m = self.involution
        square = float(np.max(np.abs(m @ np.conj(m) - np.eye(3))))
        form = float(np.max(np.abs(m.conj().T @ J @ m - J)))
        return max(square, form)


def standard_complex_line():
    return ComplexLine(np.array([0, 1, 0], dtype=complex))


def standard_lagrangian():
    return LagrangianPlane(np.eye(3))


def line_contains(L, p, eps=EPS_MEMBER):
    return abs(hermitian_form(normalize_max(p), L.polar)) <= eps


def lagrangian_contains(P, p, eps=EPS_MEMBER):
    v = normalize_max(p)
    return projective_defect(v, P.reflect(v)) <= eps


def push_line(Q, L):
    """Image Q(L). Q preserves the form, so <Qp, Qn> = <p, n> and the polar
    is carried by Q itself (equivalently J Q^-H J n)."""
    return ComplexLine(_as_matrix(Q) @ L.polar)


def push_lagrangian(Q, P):
    """Image Q(P): the involution becomes Q M conj(Q)^-1."""
    q = _as_matrix(Q)
    conj_q_inv = J @ q.T @ J  # conj(Q^-1) for Q in SU(2,1)
    return LagrangianPlane(q @ P.involution @ conj_q_inv)


def is_in_SO21(M, eps=EPS_MEMBER):
    return float(np.max(np.abs(_as_matrix(M).imag))) <= eps


def block_defect(M):
    """max(|b|, |d|, |f|, |h|): distance from the stabilizer pattern of L1."""
    m = _as_matrix(M)
    return float(max(abs(m[0, 1]), abs(m[1, 0]), abs(m[1, 2]), abs(m[2, 1])))


def is_block_line_stabilizer(M, eps=EPS_MEMBER):
    return block_defect(M) <= eps


def line_defect(M, L):
    """Projective distance between the polars of M(L) and L."""
    return projective_defect(L.polar, _as_matrix(M) @ L.polar)


def line_stabilizer_check(M, L, eps=EPS_MEMBER):
    return line_defect(M, L) <= eps


def lagrangian_defect(M, P):
    """Distance between the involutions of M(P) and P, up to a unit scalar."""
    pushed = push_lagrangian(M, P).involution
    base = P.involution
    scale = np.vdot(base, pushed) / np.vdot(base, base)
    return float(np.max(np.abs(pushed - scale * base)))
