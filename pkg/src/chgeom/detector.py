"""Decide whether a real-trace subgroup of SU(2,1) is R- or C-Fuchsian.

The pipeline audits traces over a word ball, conjugates a real-trace
loxodromic element to diag(t, 1, 1/t), looks at the (1,3) entry of a
companion generator and then tries to certify one of two normal forms:

* c real: every conjugated generator is a real matrix (preserves the real
  Lagrangian plane), after removing a residual diagonal phase;
* c purely imaginary: every conjugated generator has the block pattern
  stabilizing the complex line with polar (0, 1, 0).

Positive verdicts carry a certificate that :func:`certify` re-checks on every
generator; negative verdicts carry a word with non-real trace.
"""

from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from .errors import (
    CertificationFailed,
    GeometryError,
    NoLoxodromicFound,
    NonRealDiagonalForm,
    SharedFixedPointsOnly,
)
from .hermitian import J
from .isometries import (
    GroupElement,
    IsometryClass,
    classify,
    conjugate,
    eigen,
    form_residual,
    validate,
)
from .fixtures import SWAP_S, torus_element
from .submanifolds import (
    ComplexLine,
    block_defect,
    line_defect,
    push_lagrangian,
    standard_lagrangian,
)
from .tolerances import DEFAULT, Tolerances
from .words import Word, scan_ball, word_ball

DEFAULT_RADIUS = 4


@dataclass(frozen=True)
class TraceAuditReport:
    radius: int
    words_checked: int
    max_imag_trace: float
    witness: Word = None
    witness_trace: complex = None


def trace_audit(presentation, radius=DEFAULT_RADIUS, eps_tr=DEFAULT.tr, jobs=1):
    """Largest |Im tr| over the ball and the first word exceeding ``eps_tr``."""

    def visit(word, m):
        return word, m.trace()

    parts = scan_ball(presentation, radius, visit, jobs=jobs)
    count = 0
    worst = 0.0
    witness = None
    for part in parts:
        for word, tr in part:
            count += 1
            worst = max(worst, abs(tr.imag))
            if abs(tr.imag) > eps_tr:
                key = word.order_key(presentation)
                if witness is None or key < witness[0]:
                    witness = (key, word, tr)
    if witness is None:
        return TraceAuditReport(radius, count, worst)
    return TraceAuditReport(radius, count, worst, witness[1], witness[2])


def find_real_loxodromic(presentation, radius=DEFAULT_RADIUS, tol=DEFAULT):
    """First word whose element is loxodromic with real eigenvalues t, 1, 1/t, t > 1."""
    for word, m in word_ball(presentation, radius):
        if abs(m.trace().imag) > tol.tr:
            continue
        if classify(m, tol.eig) is not IsometryClass.LOXODROMIC:
            continue
        values = eigen(m, tol.eig).values
        if np.max(np.abs(values.imag)) > tol.entry * max(1.0, abs(values[0])):
            continue
        if values[0].real > 1 + tol.eig:
            return word, m
    raise NoLoxodromicFound(f"no real-trace loxodromic with positive eigenvalues up to radius {radius}")


def _unit_phase(v):
    k = int(np.argmax(np.abs(v)))
    return v * (abs(v[k]) / v[k])


def _pair(z, w):
    return complex(w.conj() @ J @ z)


def diagonalizing_conjugator(A, tol=DEFAULT):
    """Q in SU(2,1) with Q^-1 A Q = diag(t, 1, 1/t) (moduli descending).

    Columns are the attracting, middle and repelling eigenvectors, scaled so
    that <v+, v-> = 1 and <v0, v0> = 1; the determinant is then fixed by a
    cube root.
    """
    es = eigen(A, tol.eig)
    if es.defective or len(es.clusters) != 3:
        raise NonRealDiagonalForm("element is not loxodromic with three separate eigenvalues")
    v_plus, v_zero, v_minus = (p.vector for p in es.pairs)
    v_plus = _unit_phase(v_plus)
    pairing = _pair(v_plus, v_minus)
    if abs(pairing) < 1e-12:
        raise NonRealDiagonalForm("fixed points are not paired by the form")
    v_minus = v_minus * np.conj(1 / pairing)
    norm0 = _pair(v_zero, v_zero).real
    if norm0 <= 0:
        raise NonRealDiagonalForm("middle eigenvector is not positive")
    v_zero = _unit_phase(v_zero) / np.sqrt(norm0)
    q = np.column_stack([v_plus, v_zero, v_minus])
    det = complex(np.linalg.det(q))
    q = q / det ** (1.0 / 3.0)
    Q = validate(q, max(tol.grp, 1e-12 * np.linalg.cond(q)))
    diag = np.diag(conjugate(A, Q).matrix)
    if np.max(np.abs(diag.imag)) > tol.entry * max(1.0, float(np.max(np.abs(diag)))):
        raise NonRealDiagonalForm(f"diagonal form {diag} is not real")
    return Q


@dataclass(frozen=True)
class Companion:
    index: int
    element: GroupElement
    swapped: bool


def select_companion(generators, eps=DEFAULT.entry):
    """First generator moving 0 (|c| > eps), else one moving infinity.

    In the second case the swap S exchanging 0 and infinity is applied and
    ``swapped`` is set; the caller must conjugate everything by S as well.
    """
    for i, g in enumerate(generators):
        if abs(g.c) > eps:
            return Companion(i, g, False)
    for i, g in enumerate(generators):
        if abs(g.g) > eps:
            return Companion(i, conjugate(g, SWAP_S), True)
    raise SharedFixedPointsOnly("every generator fixes both 0 and infinity")


class PhaseCase(Enum):
    REAL_C = "real_c"
    IMAGINARY_C = "imaginary_c"
    INDETERMINATE = "indeterminate"


def phase_dichotomy(B, eps=DEFAULT.entry):
    c = B.c
    if abs(c.imag) <= eps * abs(c):
        return PhaseCase.REAL_C
    if abs(c.real) <= eps * abs(c):
        return PhaseCase.IMAGINARY_C
    return PhaseCase.INDETERMINATE


def residual_phase_normalizer(generators, eps=DEFAULT.entry):
    """diag(u, u^-2, u) removing the phase left over after diagonalization.

    Conjugating by D = diag(u, u^-2, u) multiplies b and h by u^-3 and d and f
    by u^3 while fixing the diagonal of A. The phase is read off the largest
    off-pattern entry among b, d, f, h over all generators.
    Returns (D, u).
    """
    best = None
    for g in generators:
        for name, sign in (("b", 1), ("h", 1), ("d", -1), ("f", -1)):
            z = getattr(g, name)
            if abs(z) > eps and (best is None or abs(z) > abs(best[0])):
                best = (z, sign)
    if best is None:
        return torus_element(1.0), 1.0 + 0j
    z, sign = best
    u = np.exp(1j * sign * np.angle(z) / 3)
    return torus_element(u), complex(u)


class Reason(Enum):
    NO_LOXODROMIC_FOUND = "NoLoxodromicFound"
    SHARED_FIXED_POINTS_ONLY = "SharedFixedPointsOnly"
    NON_REAL_DIAGONAL_FORM = "NonRealDiagonalForm"
    CERTIFICATION_FAILED = "CertificationFailed"


@dataclass(frozen=True)
class Certification:
    kind: str
    defects: tuple
    max_defect: float
    conjugator_residual: float
    tolerance: float
    passed: bool


@dataclass(frozen=True)
class RFuchsian:
    conjugator: GroupElement
    residual_phase: complex
    certification: Certification = None
    kind = "RFuchsian"

    def lagrangian(self):
        """The invariant Lagrangian plane, the image of the real plane."""
        return push_lagrangian(self.conjugator, standard_lagrangian())


@dataclass(frozen=True)
class CFuchsian:
    polar: np.ndarray
    conjugator: GroupElement
    certification: Certification = None
    kind = "CFuchsian"

    def line(self):
        return ComplexLine(self.polar)


@dataclass(frozen=True)
class NotFuchsian:
    witness: Word
    imag_trace: float
    trace: complex = None
    kind = "NotFuchsian"


@dataclass(frozen=True)
class Inconclusive:
    reason: Reason
    detail: str = ""
    kind = "Inconclusive"


@dataclass
class DetectionLog:
    """What the pipeline saw on the way to a verdict (for reports)."""

    audit: TraceAuditReport = None
    escalated_audit: TraceAuditReport = None
    loxodromic_word: Word = None
    companion_index: int = None
    phase_case: PhaseCase = None
    notes: list = field(default_factory=list)


def certify(verdict, presentation, eps=DEFAULT.cert):
    """Re-check a positive verdict against every generator.

    R-Fuchsian: max |Im| over entries of Q^-1 g Q, with Q^-1 from a linear
    solve. C-Fuchsian: max projective defect between the polar of g(L) and L.
    The conjugator must itself preserve the form. Raises CertificationFailed
    (carrying the record as ``.record``) when any defect exceeds ``eps``.
    """
    if isinstance(verdict, RFuchsian):
        q = verdict.conjugator.matrix
        defects = tuple(
            float(np.max(np.abs(np.linalg.solve(q, g.matrix @ q).imag)))
            for g in presentation.elements
        )
        kind = "max_imag_entry"
    elif isinstance(verdict, CFuchsian):
        line = ComplexLine(verdict.polar)
        defects = tuple(line_defect(g, line) for g in presentation.elements)
        q = verdict.conjugator.matrix
        kind = "line_defect"
    else:
        raise TypeError("only positive verdicts carry a certificate")
    q_scale = max(1.0, float(np.max(np.abs(q)))) ** 2
    q_residual = form_residual(q) / q_scale
    worst = max(defects)
    passed = worst <= eps and q_residual <= eps
    record = Certification(kind, defects, worst, q_residual, eps, passed)
    if not passed:
        exc = CertificationFailed(
            f"certificate defect {worst:.3g} (conjugator residual {q_residual:.3g}) exceeds {eps:g}",
            defect=worst,
        )
        exc.record = record
        raise exc
    return record


def detect(presentation, radius=DEFAULT_RADIUS, tol=None, jobs=1, log=None):
    """Run the full pipeline and return a verdict.

    ``log`` (a DetectionLog) is filled in when given.
    """
    tol = tol or Tolerances()
    if radius < 2:
        raise ValueError("radius must be at least 2")
    log = log if log is not None else DetectionLog()

    audit = trace_audit(presentation, radius, tol.tr, jobs=jobs)
    log.audit = audit
    if audit.witness is not None:
        return NotFuchsian(audit.witness, abs(audit.witness_trace.imag), audit.witness_trace)

    def escalate(detail):
        wider = trace_audit(presentation, radius + tol.escalation, tol.tr, jobs=jobs)
        log.escalated_audit = wider
        if wider.witness is not None:
            return NotFuchsian(wider.witness, abs(wider.witness_trace.imag), wider.witness_trace)
        return Inconclusive(Reason.CERTIFICATION_FAILED, detail)

    try:
        word, A = find_real_loxodromic(presentation, radius, tol)
    except NoLoxodromicFound as exc:
        return Inconclusive(Reason.NO_LOXODROMIC_FOUND, str(exc))
    log.loxodromic_word = word

    try:
        Q = diagonalizing_conjugator(A, tol)
    except (NonRealDiagonalForm, GeometryError) as exc:
        return Inconclusive(Reason.NON_REAL_DIAGONAL_FORM, str(exc))
    gens = [conjugate(g, Q) for g in presentation.elements]

    try:
        companion = select_companion(gens, tol.entry)
    except SharedFixedPointsOnly as exc:
        return Inconclusive(Reason.SHARED_FIXED_POINTS_ONLY, str(exc))
    log.companion_index = companion.index
    if companion.swapped:
        log.notes.append("swapped 0 and infinity to find a companion")
        Q = Q @ SWAP_S
        gens = [conjugate(g, SWAP_S) for g in gens]

    case = phase_dichotomy(companion.element, tol.entry)
    log.phase_case = case

    if case is PhaseCase.REAL_C:
        D, u = residual_phase_normalizer(gens, tol.entry)
        gens = [conjugate(g, D) for g in gens]
        worst = max(float(np.max(np.abs(g.matrix.imag))) for g in gens)
        if worst > tol.cert:
            return escalate(f"conjugated generators not real (max |Im| {worst:.3g})")
        verdict = RFuchsian(Q @ D, u)
    elif case is PhaseCase.IMAGINARY_C:
        worst = max(block_defect(g) for g in gens)
        if worst > tol.cert:
            return escalate(f"conjugated generators not block-diagonal (defect {worst:.3g})")
        polar = Q.matrix @ np.array([0, 1, 0], dtype=complex)
        verdict = CFuchsian(ComplexLine(polar).polar, Q)
    else:
        return escalate(f"companion entry c = {companion.element.c!r} is neither real nor imaginary")

    try:
        record = certify(verdict, presentation, tol.cert)
    except CertificationFailed as exc:
        return escalate(str(exc))
    return replace(verdict, certification=record)
