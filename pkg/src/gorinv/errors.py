"""Exception hierarchy. Every domain error derives from :class:`GorinvError`."""


class GorinvError(ValueError):
    kind = "domain_error"


class FieldError(GorinvError):
    kind = "field_error"


class FieldMismatch(FieldError, TypeError):
    kind = "field_mismatch"


class ZeroInverse(FieldError, ZeroDivisionError):
    kind = "zero_inverse"


class DimensionError(GorinvError):
    kind = "dimension_mismatch"


class GroupError(GorinvError):
    kind = "group_error"


class FunctionalError(GorinvError):
    kind = "functional_error"


class IdealError(GorinvError):
    kind = "ideal_error"


class SpecError(GorinvError):
    kind = "invalid_spec"
