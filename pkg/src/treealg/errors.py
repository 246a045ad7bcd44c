"""Domain errors. Each carries a stable ``code`` string used by the CLI."""


class TreeAlgebraError(Exception):
    code = "DOMAIN_ERROR"

    def to_json(self):
        out = {"error": self.code}
        if self.args:
            out["message"] = str(self.args[0])
        return out


class InvalidAlphabet(TreeAlgebraError):
    code = "INVALID_ALPHABET"


class InvalidWordSet(TreeAlgebraError):
    code = "INVALID_WORD_SET"


class DecompositionUndefined(TreeAlgebraError):
    code = "DECOMPOSITION_UNDEFINED"

    def to_json(self):
        return {"error": self.code}


class ArityMismatch(TreeAlgebraError):
    code = "ARITY_MISMATCH"


class IncompleteTable(TreeAlgebraError):
    code = "INCOMPLETE_TABLE"


class AlphabetTooSmall(TreeAlgebraError):
    code = "ALPHABET_TOO_SMALL"


class SkeletonMismatch(TreeAlgebraError):
    code = "SKELETON_MISMATCH"


class NotWCP(TreeAlgebraError):
    """Raised when a table violates the grafting condition; ``witness`` is the first violation."""

    code = "NOT_WCP"

    def __init__(self, witness):
        super().__init__(f"table is not WCP; first violation at {witness}")
        self.witness = witness

    def to_json(self):
        return {"error": self.code, "witness": self.witness.to_json()}


class InvalidMagma(TreeAlgebraError):
    code = "INVALID_MAGMA"


class UnknownProposition(TreeAlgebraError):
    code = "UNKNOWN_PROPOSITION"


class CostLimitExceeded(TreeAlgebraError):
    code = "COST_LIMIT_EXCEEDED"
