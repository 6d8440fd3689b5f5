"""Exception hierarchy shared across the package."""


class GroupHandoverError(Exception):
    """Base class for every error raised by this package."""


class EncodingError(GroupHandoverError, ValueError):
    """Malformed canonical byte encoding."""


class DuplicateEvaluationPoint(GroupHandoverError, ValueError):
    """Two shares carry the same public x; Lagrange weights are undefined."""


class ZeroEvaluationPoint(GroupHandoverError, ValueError):
    """A share sits at x = 0, which would be the group secret itself."""


class InvalidPolynomial(GroupHandoverError, ValueError):
    pass


class InvalidThreshold(GroupHandoverError, ValueError):
    pass


class DuplicateIdentity(GroupHandoverError, ValueError):
    pass


class EvaluationPointsExhausted(GroupHandoverError):
    """Every nonzero scalar has already been handed out."""


class MissingSecretFunction(GroupHandoverError):
    """The base station does not hold the secret polynomial."""


class DecryptionFailure(GroupHandoverError):
    """Authenticated decryption failed (wrong key or tampered ciphertext)."""


class PolynomialMismatch(GroupHandoverError):
    """A received polynomial does not reproduce the receiver's own credential."""


class InvalidCount(GroupHandoverError, ValueError):
    pass


class EmptyKey(GroupHandoverError, ValueError):
    pass


class InvalidRate(GroupHandoverError, ValueError):
    pass


class ScenarioError(GroupHandoverError):
    """A simulated scenario failed; the message carries diagnostic context."""


class WireKnowledgeViolation(GroupHandoverError):
    """An adversary script tried to hold material it never saw on the wire."""
