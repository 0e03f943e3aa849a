"""Command-line driver.

Subcommands: validate, classify, cartan, cross, audit, detect, fixtures,
orbit. Reports are JSON on stdout; mathematical outcomes live in the report
and the exit status only signals I/O or validation trouble.
"""

import argparse
import csv
import sys
import time
from pathlib import Path

import numpy as np
from scipy.linalg import expm

from . import detector as det
from .errors import BadDeterminant, GeometryError, InvalidGenerators, NotUnitary
from .fixtures import B_BLOCK, B_REAL, LOX_A, random_element, random_lie_algebra
from .formats import (
    FormatError,
    complex_pair,
    dumps,
    format_float,
    generator_document,
    load_generator_file,
    load_points_file,
    matrix_rows,
    parse_matrix,
    point_token,
    vector_entries,
)
from .hermitian import ProjectivePoint, standard_lift
from .invariants import cartan_invariant, coplanarity_test, kr_cross_ratio
from .isometries import (
    GroupElement,
    classify,
    eigen,
    fixed_points,
    form_residual,
    identity_residuals,
    is_identity,
    normalize_to_su21,
    validate,
)
from .tolerances import Tolerances
from .words import GroupPresentation, Word, word_ball

EXIT_OK = 0
EXIT_FAIL = 1


class CliError(Exception):
    pass


# ---------------------------------------------------------------------------
# helpers


def _tolerances(args, file_overrides=None):
    tol = Tolerances()
    if file_overrides:
        tol = tol.updated(**file_overrides)
    return tol.updated(
        grp=getattr(args, "tol_grp", None),
        tr=getattr(args, "tol_tr", None),
        cert=getattr(args, "tol_cert", None),
        entry=getattr(args, "tol", None),
        cop=getattr(args, "tol_cop", None),
    )


def _tol_dict(tol):
    return {k: getattr(tol, k) for k in tol.__dataclass_fields__}


def _report(command, args, digest, tol, result, started):
    report = {
        "command": command,
        "args": args,
        "input_sha256": digest,
        "tolerances": _tol_dict(tol) if tol is not None else None,
        "result": result,
    }
    if started is not None:
        report["wall_time_s"] = time.perf_counter() - started
    return report


def _load_group(path, tol):
    """Parse, then validate each generator (normalizing the determinant if needed)."""
    items, _, digest, meta = load_generator_file(path)
    labels, elements, notes = [], [], {}
    for label, m in items:
        try:
            g = validate(m, tol.grp)
        except BadDeterminant:
            try:
                g = normalize_to_su21(m, tol.grp)
            except NotUnitary as exc:
                raise InvalidGenerators(f"generator {label!r}: {exc}") from exc
            notes[label] = "normalized by the cube root of the determinant"
        except NotUnitary as exc:
            raise InvalidGenerators(f"generator {label!r}: {exc}") from exc
        labels.append(label)
        elements.append(g)
    return GroupPresentation(tuple(labels), tuple(elements)), digest, notes, meta


def verdict_to_dict(verdict, presentation):
    out = {"kind": verdict.kind}
    if isinstance(verdict, det.RFuchsian):
        out["conjugator"] = matrix_rows(verdict.conjugator)
        out["residual_phase"] = complex_pair(verdict.residual_phase)
        out["lagrangian_involution"] = matrix_rows(verdict.lagrangian().involution)
    elif isinstance(verdict, det.CFuchsian):
        out["polar"] = vector_entries(verdict.polar)
        out["conjugator"] = matrix_rows(verdict.conjugator)
    elif isinstance(verdict, det.NotFuchsian):
        out["witness"] = verdict.witness.label(presentation.labels)
        out["witness_length"] = len(verdict.witness)
        out["imag_trace"] = verdict.imag_trace
        out["trace"] = complex_pair(verdict.trace)
    else:
        out["reason"] = verdict.reason.value
        out["detail"] = verdict.detail
    cert = getattr(verdict, "certification", None)
    if cert is not None:
        out["certification"] = {
            "kind": cert.kind,
            "defects": dict(zip(presentation.labels, cert.defects)),
            "max_defect": cert.max_defect,
            "conjugator_residual": cert.conjugator_residual,
            "tolerance": cert.tolerance,
            "passed": cert.passed,
        }
    return out


def verdict_from_dict(data, presentation):
    """Rebuild a verdict from its report form (for re-certification)."""
    kind = data["kind"]
    if kind == "RFuchsian":
        return det.RFuchsian(GroupElement(parse_matrix(data["conjugator"])),
                             complex(*data["residual_phase"]))
    if kind == "CFuchsian":
        polar = np.array([complex(*v) for v in data["polar"]])
        return det.CFuchsian(polar, GroupElement(parse_matrix(data["conjugator"])))
    if kind == "NotFuchsian":
        return det.NotFuchsian(Word.parse(data["witness"], presentation.labels),
                               data["imag_trace"], complex(*data["trace"]))
    return det.Inconclusive(det.Reason(data["reason"]), data.get("detail", ""))


def _audit_dict(report, presentation):
    if report is None:
        return None
    out = {
        "radius": report.radius,
        "words_checked": report.words_checked,
        "max_imag_trace": report.max_imag_trace,
        "witness": None,
    }
    if report.witness is not None:
        out["witness"] = report.witness.label(presentation.labels)
        out["witness_trace"] = complex_pair(report.witness_trace)
    return out


def _parse_point_arg(text):
    text = text.strip()
    if text.lower() == "inf":
        return ProjectivePoint.infinity()
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise CliError("--point takes 'inf' or 'z1,z2' (complex literals such as -0.5 or 1+2j)")
    try:
        z1, z2 = (complex(p.replace(" ", "")) for p in parts)
    except ValueError as exc:
        raise CliError(f"cannot parse --point {text!r}") from exc
    return ProjectivePoint(standard_lift(z1, z2))


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args):
    items, overrides, digest, _ = load_generator_file(args.file)
    tol = _tolerances(args, overrides)
    rows = []
    for label, m in items:
        entry = {
            "label": label,
            "det": complex_pair(np.linalg.det(m)),
            "det_residual": abs(np.linalg.det(m) - 1),
            "identity_grid_max_residual": max(abs(r) for r in identity_residuals(m).values()),
            "form_residual": form_residual(m),
        }
        try:
            validate(m, tol.grp)
            entry["status"] = "valid"
        except BadDeterminant as exc:
            entry["status"] = "BadDeterminant"
            entry["message"] = str(exc)
            try:
                g = normalize_to_su21(m, tol.grp)
                root = complex(np.linalg.det(m)) ** (1.0 / 3.0)
                entry["normalization"] = {
                    "divided_by": complex_pair(root),
                    "normalized_matrix": matrix_rows(g),
                }
            except NotUnitary as exc2:
                entry["normalization"] = {"error": str(exc2)}
        except NotUnitary as exc:
            entry["status"] = "NotUnitary"
            entry["message"] = str(exc)
        rows.append(entry)
    return digest, tol, {"generators": rows}


def cmd_classify(args):
    tol = _tolerances(args, load_generator_file(args.file)[1])
    group, digest, notes, _ = _load_group(args.file, tol)
    rows = []
    for label, g in zip(group.labels, group.elements):
        es = eigen(g, tol.eig)
        entry = {
            "label": label,
            "class": classify(g, tol.eig).value,
            "is_identity": is_identity(g, tol.grp),
            "trace": complex_pair(g.trace()),
            "eigenvalues": [complex_pair(v) for v in es.values],
            "defective": es.defective,
        }
        if not entry["is_identity"]:
            entry["fixed_points"] = [
                {"point": point_token(fp.point), "class": fp.point_class.value,
                 "eigenvalue": complex_pair(fp.eigenvalue), "role": fp.role}
                for fp in fixed_points(g, tol.eig, tol.pt)
            ]
        if label in notes:
            entry["note"] = notes[label]
        rows.append(entry)
    return digest, tol, {"generators": rows}


def cmd_cartan(args):
    tol = _tolerances(args)
    confs, digest = load_points_file(args.file)
    rows = []
    for conf in confs:
        entry = {"points": [point_token(p) for p in conf]}
        try:
            if len(conf) != 3:
                raise GeometryError("a Cartan invariant needs exactly three points")
            entry["angle"] = cartan_invariant(*conf, eps_pt=tol.pt)
            entry["angle_over_pi"] = entry["angle"] / np.pi
        except GeometryError as exc:
            entry["degenerate"] = f"{type(exc).__name__}: {exc}"
        rows.append(entry)
    return digest, tol, {"configurations": rows}


def cmd_cross(args):
    tol = _tolerances(args)
    confs, digest = load_points_file(args.file)
    rows = []
    for conf in confs:
        entry = {"points": [point_token(p) for p in conf]}
        try:
            if len(conf) != 4:
                raise GeometryError("cross-ratios need exactly four points")
            entry["X"] = complex_pair(kr_cross_ratio(*conf, eps_pt=tol.pt))
            verdict = coplanarity_test(*conf, eps_cop=tol.cop, eps_pt=tol.pt)
            entry["X1"], entry["X2"], entry["X3"] = (complex_pair(x) for x in verdict.triple.as_tuple())
            entry["coplanarity"] = verdict.kind.value
            entry["imag_parts"] = list(verdict.imag_parts)
            entry["complex_line_defect"] = verdict.complex_line_defect
            entry["lagrangian_defect"] = verdict.lagrangian_defect
        except GeometryError as exc:
            entry["degenerate"] = f"{type(exc).__name__}: {exc}"
        rows.append(entry)
    return digest, tol, {"configurations": rows}


def cmd_audit(args):
    tol = _tolerances(args, load_generator_file(args.file)[1])
    group, digest, _, _ = _load_group(args.file, tol)
    report = det.trace_audit(group, args.radius, tol.tr, jobs=args.jobs)
    return digest, tol, _audit_dict(report, group)


def cmd_detect(args):
    tol = _tolerances(args, load_generator_file(args.file)[1])
    group, digest, notes, _ = _load_group(args.file, tol)
    log = det.DetectionLog()
    verdict = det.detect(group, args.radius, tol, jobs=args.jobs, log=log)
    result = {
        "verdict": verdict_to_dict(verdict, group),
        "audit": _audit_dict(log.audit, group),
        "escalated_audit": _audit_dict(log.escalated_audit, group),
        "loxodromic_word": log.loxodromic_word.label(group.labels) if log.loxodromic_word else None,
        "companion": group.labels[log.companion_index] if log.companion_index is not None else None,
        "phase_case": log.phase_case.value if log.phase_case else None,
        "notes": list(log.notes) + [f"{k}: {v}" for k, v in notes.items()],
    }
    return digest, tol, result


def _fixture_group(kind, rng, magnitude):
    base = B_REAL if kind in ("r", "near-miss") else B_BLOCK
    # a random reduced word of length 2-3 in A, B as an extra generator
    letters = [(LOX_A, LOX_A.inv), (base, base.inv)]
    length = int(rng.integers(2, 4))
    word, prev = [], None
    for _ in range(length):
        while True:
            i, e = int(rng.integers(2)), int(rng.integers(2))
            if prev is None or not (prev[0] == i and prev[1] != e):
                break
        word.append((i, e))
        prev = (i, e)
    w = LOX_A @ LOX_A.inv
    for i, e in word:
        w = w @ letters[i][e]
    Q = random_element(rng)
    q_inv = Q.inv
    gens = [("A", Q @ LOX_A @ q_inv), ("B", Q @ base @ q_inv), ("W", Q @ w @ q_inv)]
    names = ["A", "B"]
    meta = {
        "kind": kind,
        "extra_word": " ".join(names[i] + ("" if e == 0 else "^-1") for i, e in word),
        "conjugator": matrix_rows(Q),
    }
    if kind == "near-miss":
        target = int(rng.integers(len(gens)))
        x = random_lie_algebra(rng, 1.0)
        x = x / np.linalg.norm(x)
        label, g = gens[target]
        gens[target] = (label, g @ GroupElement(expm(magnitude * x)))
        meta["perturbation"] = {"generator": label, "magnitude": magnitude}
    return gens, meta


def cmd_fixtures(args):
    rng = np.random.default_rng(args.seed)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for k in range(args.count):
        gens, meta = _fixture_group(args.kind, rng, args.magnitude)
        meta["seed"] = args.seed
        meta["index"] = k
        path = out_dir / f"{args.kind}_seed{args.seed}_{k:03d}.json"
        path.write_text(dumps(generator_document(gens, meta)) + "\n")
        written.append(str(path))
    return None, None, {"files": written}


def cmd_orbit(args, stdout=None):
    tol = _tolerances(args, load_generator_file(args.file)[1])
    group, _, _, _ = _load_group(args.file, tol)
    point = _parse_point_arg(args.point)
    out = open(args.out, "w", newline="") if args.out else (stdout or sys.stdout)
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["word", "re_z1", "im_z1", "re_z2", "im_z2"])
        for word, m in word_ball(group, args.radius):
            image = ProjectivePoint(m.matrix @ point.vector, tol.pt)
            coords = image.coordinates()
            if coords is None:
                vals = ["inf"] * 4
            else:
                vals = [format_float(v) for v in (coords[0].real, coords[0].imag,
                                                  coords[1].real, coords[1].imag)]
            writer.writerow([word.label(group.labels)] + vals)
    finally:
        if args.out:
            out.close()


# ---------------------------------------------------------------------------


def _add_tol_flags(p, detector=False):
    p.add_argument("--tol-grp", type=float, default=None, help="group validation tolerance")
    p.add_argument("--tol-tr", type=float, default=None, help="trace realness tolerance")
    p.add_argument("--tol-cert", type=float, default=None, help="certificate tolerance")
    if detector:
        p.add_argument("--tol", type=float, default=None, help="entry tolerance used by the detector")


def build_parser():
    parser = argparse.ArgumentParser(prog="chgeom", description=__doc__.splitlines()[0])
    parser.add_argument("--timing", action="store_true", help="add wall time to reports")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check generators lie in SU(2,1)")
    p.add_argument("file")
    _add_tol_flags(p)

    p = sub.add_parser("classify", help="loxodromic/parabolic/elliptic per generator")
    p.add_argument("file")
    _add_tol_flags(p)

    p = sub.add_parser("cartan", help="Cartan angular invariant of point triples")
    p.add_argument("file")

    p = sub.add_parser("cross", help="cross-ratios and coplanarity of quadruples")
    p.add_argument("file")
    p.add_argument("--tol-cop", type=float, default=None)

    p = sub.add_parser("audit", help="trace audit over a word ball")
    p.add_argument("file")
    p.add_argument("--radius", type=int, default=det.DEFAULT_RADIUS)
    p.add_argument("--jobs", type=int, default=1)
    _add_tol_flags(p)

    p = sub.add_parser("detect", help="decide R-/C-Fuchsian with a certificate")
    p.add_argument("file")
    p.add_argument("--radius", type=int, default=det.DEFAULT_RADIUS)
    p.add_argument("--jobs", type=int, default=1)
    _add_tol_flags(p, detector=True)

    p = sub.add_parser("fixtures", help="write seeded generator files")
    p.add_argument("--kind", choices=["r", "c", "near-miss"], required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--magnitude", type=float, default=1e-3,
                   help="size of the near-miss perturbation")
    p.add_argument("--out-dir", default=".")

    p = sub.add_parser("orbit", help="CSV of the word-ball orbit of a point")
    p.add_argument("file")
    p.add_argument("--point", required=True, help="'inf' or 'z1,z2'; write --point=-0.5,1 when z1 is negative")
    p.add_argument("--radius", type=int, default=3)
    p.add_argument("--out", default=None)
    _add_tol_flags(p)
    return parser


COMMANDS = {
    "validate": cmd_validate,
    "classify": cmd_classify,
    "cartan": cmd_cartan,
    "cross": cmd_cross,
    "audit": cmd_audit,
    "detect": cmd_detect,
    "fixtures": cmd_fixtures,
    "orbit": cmd_orbit,
}


def main(argv=None, stdout=None):
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter() if args.timing else None
    try:
        if args.command == "orbit":
            cmd_orbit(args, stdout)
            return EXIT_OK
        digest, tol, result = COMMANDS[args.command](args)
    except (OSError, FormatError, InvalidGenerators, CliError, KeyError, ValueError) as exc:
        print(f"chgeom {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    echo = {k: v for k, v in vars(args).items() if k not in ("command", "timing")}
    report = _report(args.command, echo, digest, tol, result, started)
    stdout.write(dumps(report) + "\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
