"""Boundary invariants: Cartan's angular invariant and cross-ratios."""

from dataclasses import dataclass
from enum import Enum
from itertools import combinations

import numpy as np

from .errors import DegenerateQuadruple, DegenerateTriple
from .hermitian import (
    EPS_PT,
    PointClass,
    classify_point,
    hermitian_form,
    normalize_max,
    projective_defect,
)

EPS_COP = 1e-7


def _boundary_lifts(points, eps_pt, error):
    lifts = []
    for p in points:
        v = normalize_max(p)
        if classify_point(v, eps_pt) is not PointClass.BOUNDARY:
            raise error("all points must lie on the boundary")
        lifts.append(v)
    for u, v in combinations(lifts, 2):
        if projective_defect(u, v) <= 1e-9:
            raise error("points are not pairwise distinct")
    return lifts


def cartan_invariant(p1, p2, p3, eps_pt=EPS_PT):
    """arg(-<z1,z2><z2,z3><z3,z1>) in radians, branch (-pi, pi]."""
    z1, z2, z3 = _boundary_lifts((p1, p2, p3), eps_pt, DegenerateTriple)
    pairs = (hermitian_form(z1, z2), hermitian_form(z2, z3), hermitian_form(z3, z1))
    if min(abs(x) for x in pairs) <= eps_pt:
        raise DegenerateTriple("a pairing of the lifts vanishes")
    product = -pairs[0] * pairs[1] * pairs[2]
    angle = float(np.angle(product))
    if angle == -np.pi:
        angle = np.pi
    return angle


def kr_cross_ratio(p1, p2, p3, p4, eps_pt=EPS_PT):
    """Koranyi-Reimann cross-ratio <z3,z1><z4,z2> / (<z4,z1><z3,z2>)."""
    z1, z2, z3, z4 = _boundary_lifts((p1, p2, p3, p4), eps_pt, DegenerateQuadruple)
    return _kr(z1, z2, z3, z4, eps_pt)


def _kr(z1, z2, z3, z4, eps_pt):
    den = hermitian_form(z4, z1) * hermitian_form(z3, z2)
    if abs(den) <= eps_pt:
        raise DegenerateQuadruple("cross-ratio denominator vanishes")
    return hermitian_form(z3, z1) * hermitian_form(z4, z2) / den


@dataclass(frozen=True)
class CrossRatioTriple:
    X1: complex
    X2: complex
    X3: complex

    def as_tuple(self):
        return (self.X1, self.X2, self.X3)


def pp_cross_ratios(p1, p2, p3, p4, eps_pt=EPS_PT):
    """The reordered triple [1,2,3,4], [1,3,2,4], [2,3,1,4]."""
    z1, z2, z3, z4 = _boundary_lifts((p1, p2, p3, p4), eps_pt, DegenerateQuadruple)
    return CrossRatioTriple(
        _kr(z1, z2, z3, z4, eps_pt),
        _kr(z1, z3, z2, z4, eps_pt),
        _kr(z2, z3, z1, z4, eps_pt),
    )


class Coplanarity(Enum):
    COMPLEX_LINE = "complex_line"
    LAGRANGIAN = "lagrangian"
    NEITHER = "neither"
    AMBIGUOUS = "ambiguous"


@dataclass(frozen=True)
class CoplanarityVerdict:
    kind: Coplanarity
    triple: CrossRatioTriple
    imag_parts: tuple
    complex_line_defect: float
    lagrangian_defect: float


def coplanarity_test(p1, p2, p3, p4, eps_cop=EPS_COP, eps_pt=EPS_PT):
    """Decide whether four boundary points share a complex line or Lagrangian.

    The verdict is NEITHER unless all three reordered cross-ratios are real
    (relative to their size). Then X3 = -X2/X1 means a complex line and
    X3 = X2/X1 a Lagrangian plane; if both hold the result is AMBIGUOUS.
    """
    triple = pp_cross_ratios(p1, p2, p3, p4, eps_pt)
    xs = triple.as_tuple()
    imag = tuple(abs(x.imag) for x in xs)
    ratio = triple.X2 / triple.X1
    scale = 1.0 + abs(triple.X3) + abs(ratio)
    line_defect = abs(triple.X3 + ratio)
    lag_defect = abs(triple.X3 - ratio)
    real = all(im <= eps_cop * (1 + abs(x)) for im, x in zip(imag, xs))
    is_line = line_defect <= eps_cop * scale
    is_lag = lag_defect <= eps_cop * scale
    if not real:
        kind = Coplanarity.NEITHER
    elif is_line and is_lag:
        kind = Coplanarity.AMBIGUOUS
    elif is_line:
        kind = Coplanarity.COMPLEX_LINE
    elif is_lag:
        kind = Coplanarity.LAGRANGIAN
    else:
        kind = Coplanarity.NEITHER
    return CoplanarityVerdict(kind, triple, imag, float(line_defect), float(lag_defect))
