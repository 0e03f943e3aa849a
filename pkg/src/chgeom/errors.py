"""Exception types raised by the toolkit."""


class GeometryError(ValueError):
    """Base class for all errors raised by chgeom."""


class ZeroVector(GeometryError):
    pass


class NotInterior(GeometryError):
    pass


class NotUnitary(GeometryError):
    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class BadDeterminant(GeometryError):
    def __init__(self, message, det=None):
        super().__init__(message)
        self.det = det


class DegenerateTriple(GeometryError):
    pass


class DegenerateQuadruple(GeometryError):
    pass


class NoLoxodromicFound(GeometryError):
    pass


class NonRealDiagonalForm(GeometryError):
    pass


class SharedFixedPointsOnly(GeometryError):
    pass


class CertificationFailed(GeometryError):
    def __init__(self, message, defect=None):
        super().__init__(message)
        self.defect = defect


class InvalidGenerators(GeometryError):
    pass
