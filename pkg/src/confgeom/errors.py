"""Exception hierarchy shared by every module of the kernel."""


class GAError(Exception):
    """Base class for all errors raised by confgeom."""


class SignatureMismatch(GAError, ValueError):
    pass


class GradeError(GAError, ValueError):
    pass


class NonSimpleBivector(GAError, ValueError):
    pass


class GeometryError(GAError):
    """A geometric precondition failed (degenerate input, missing result...)."""


class PointAtInfinity(GeometryError):
    pass


class NotAPoint(GeometryError):
    pass


class DegenerateError(GeometryError):
    pass


class CoincidentError(GeometryError):
    pass


class ContainedError(GeometryError):
    pass
