"""Error types.  Every error carries a short machine-readable ``code``."""


class PBError(Exception):
    code = "Error"

    def __init__(self, detail: str = ""):
        super().__init__(detail)
        self.detail = detail

    def __str__(self) -> str:
        return f"{self.code}: {self.detail}"


def _make(name: str) -> type:
    return type(name, (PBError,), {"code": name})


IndexOutOfRange = _make("IndexOutOfRange")
DuplicateVertex = _make("DuplicateVertex")
SizeMismatch = _make("SizeMismatch")
CrossingEdge = _make("CrossingEdge")
NotInIX = _make("NotInIX")
SizeTooLarge = _make("SizeTooLarge")
ParseError = _make("ParseError")
AsymmetricRule = _make("AsymmetricRule")
NegativeIndex = _make("NegativeIndex")
OverlappingEdges = _make("OverlappingEdges")
UnvalidatedDescriptor = _make("UnvalidatedDescriptor")
NotInF = _make("NotInF")
NotInFL = _make("NotInFL")
DetectionFailed = _make("DetectionFailed")
PreconditionViolated = _make("PreconditionViolated")
WrongAmbientSize = _make("WrongAmbientSize")
NotACycle = _make("NotACycle")
NotATrail = _make("NotATrail")
UnsupportedShape = _make("UnsupportedShape")
CapExceeded = _make("CapExceeded")
CorruptCache = _make("CorruptCache")
IndexUnsupported = _make("IndexUnsupported")
PairNotCovered = _make("PairNotCovered")
Unsupported = _make("Unsupported")
UnknownWitness = _make("UnknownWitness")
