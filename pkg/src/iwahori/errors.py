"""Exception types.

Every error carries a short machine-readable ``code`` which the command line
front end reports alongside the message.
"""


class IwahoriError(Exception):
    code = "error"


class GrammarError(IwahoriError, ValueError):
    """Malformed group or element text."""

    code = "parse_error"

    def __init__(self, message, text=None, position=None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} (at position {position} of {text!r})"
        super().__init__(message)


class DomainError(IwahoriError, ValueError):
    code = "domain_error"


class InvalidCartanTypeError(DomainError):
    code = "invalid_cartan_type"


class DimensionMismatchError(DomainError):
    code = "dimension_mismatch"


class NotARootError(DomainError):
    code = "not_a_root"


class CorruptAlcoveError(DomainError):
    code = "corrupt_alcove"


class OwnerMismatchError(DomainError):
    code = "owner_mismatch"


class NotInAffineWeylGroupError(DomainError):
    code = "not_in_affine_weyl_group"


class LatticeError(DomainError):
    code = "invalid_lattice"


class NotAnAutomorphismError(DomainError):
    code = "not_a_diagram_automorphism"


class InfiniteParabolicError(DomainError):
    code = "infinite_parabolic"


class NotSigmaFixedError(DomainError):
    code = "not_sigma_fixed"


class ConstantRestrictionError(DomainError):
    code = "constant_restriction"


class NonReducedWordError(DomainError):
    code = "non_reduced_word"

    def __init__(self, message, prefix=()):
        self.prefix = tuple(prefix)
        super().__init__(message)
