"""Exception hierarchy shared by all subpackages."""


class WeilError(Exception):
    """Base class for library errors."""


class InputError(WeilError, ValueError):
    """Malformed input: bad manifest, bad algebra spec, parity violation."""


class AlgebraMismatch(WeilError, TypeError):
    pass


class ScalarKindError(WeilError, TypeError):
    """Two scalar kinds (rational, float, symbolic) met in one computation."""


class DivisionByNonUnit(WeilError, ArithmeticError):
    pass


class ZeroRealPart(DivisionByNonUnit):
    """The element lies in the maximal ideal and has no inverse."""


class DomainError(WeilError, ArithmeticError):
    """log/sqrt of a nonpositive real part, or an unevaluable point."""


class InsufficientDerivatives(WeilError, ValueError):
    pass


class UnsampleablePoint(WeilError, RuntimeError):
    """Rejection sampling ran out of retries."""


class PatchMismatch(WeilError, ValueError):
    pass


class DegreeError(WeilError, ValueError):
    pass


class DegenerateMetric(WeilError, ArithmeticError):
    pass


class NotProjectable(WeilError, ValueError):
    pass


class NonAffineSection(WeilError, ValueError):
    pass


class OddDimensionRequired(InputError):
    pass


class MatchingImpossible(WeilError, ValueError):
    pass


class SingularJacobian(WeilError, ArithmeticError):
    pass


class ParityError(InputError):
    """Patch dimension (or algebra dimension) has the wrong parity for the structure kind."""


class DegenerateFunctional(InputError):
    """The kind needs a functional with nondegenerate Gram form."""
