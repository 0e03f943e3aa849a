from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Tolerances:
    """Tolerance bundle shared by the library and the command line.

    ``pt`` applies to the Hermitian norm of max-normalized lifts, ``grp`` to
    the form-preservation residual, ``eig`` to eigenvalue moduli, ``tr`` to
    imaginary parts of traces, ``entry`` to matrix entries inspected by the
    detector, ``cert`` to certificate defects, ``cop`` to the (relative)
    coplanarity test and ``member`` to submanifold membership.
    """

    pt: float = 1e-9
    grp: float = 1e-9
    eig: float = 1e-8
    tr: float = 1e-8
    entry: float = 1e-8
    cert: float = 1e-8
    cop: float = 1e-7
    member: float = 1e-8
    escalation: int = 2

    def updated(self, **overrides):
        known = {f.name for f in fields(self)}
        clean = {k: v for k, v in overrides.items() if v is not None}
        unknown = set(clean) - known
        if unknown:
            raise KeyError(f"unknown tolerance(s): {sorted(unknown)}")
        return replace(self, **clean)


DEFAULT = Tolerances()
