"""Exception types. Every error carries the offending witness when one exists."""


class NablaError(Exception):
    """Base class; ``witness`` holds the counterexample (tuple, element, or None)."""

    def __init__(self, message="", witness=None):
        super().__init__(message or type(self).__name__)
        self.witness = witness


class NotReflexive(NablaError):
    pass


class NotAntisymmetric(NablaError):
    pass


class NotTransitive(NablaError):
    pass


class NoMeet(NablaError):
    pass


class NoJoin(NablaError):
    pass


class NoBot(NablaError):
    pass


class NoTop(NablaError):
    pass


class NoResidual(NablaError):
    pass


class NotDistributive(NablaError):
    pass


class NotCompatible(NablaError):
    pass


class NotNormal(NablaError):
    pass


class NotSpectral(NablaError):
    pass


class NotHomeomorphism(NablaError):
    pass


class RingAxiomError(NablaError):
    pass


class NotIdeal(NablaError):
    pass


class NotHomomorphism(NablaError):
    pass


class InternalInconsistency(NablaError):
    """Two independent characterizations of the same property disagreed."""


class FormulaSyntaxError(NablaError):
    """Parse failure; ``position`` is the 0-based offset into the input."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}", witness=position)
        self.position = position


class LanguageModeError(NablaError):
    pass


class MissingAtom(NablaError):
    pass


class CapExceeded(NablaError):
    pass


class SchemaError(NablaError):
    """Malformed JSON input."""


class NotT0(NotSpectral):
    """Two distinct points have the same open neighbourhoods."""


class NotTopology(NablaError):
    pass


class UnknownRule(NablaError):
    pass


class RuleNotInSet(NablaError):
    pass


class SchemaMismatch(NablaError):
    pass
