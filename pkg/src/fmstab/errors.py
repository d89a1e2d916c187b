"""Exception taxonomy.

Every domain error carries a stable ``kind`` string so that callers (and the
command-line tool) can report errors in machine-readable form.
"""

from __future__ import annotations


class StabError(Exception):
    """Base class for all domain errors."""

    kind = "StabError"

    def __init__(self, message: str = "", **details):
        super().__init__(message or self.kind)
        self.details = details

    def to_json(self) -> dict:
        out = {"error": self.kind, "message": str(self)}
        if self.details:
            out["details"] = {k: _jsonable(v) for k, v in self.details.items()}
        return out


def _jsonable(value):
    if isinstance(value, (str, int, bool)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return str(value)


def _make(name: str, doc: str) -> type:
    return type(name, (StabError,), {"kind": name, "__doc__": doc})


# lattice_geometry
NonPositivePairing = _make("NonPositivePairing", "A functional required positive on the cone is not.")
DependentGenerators = _make("DependentGenerators", "Cone generators are linearly dependent.")
ZeroClass = _make("ZeroClass", "An operation needs a nonzero curve class.")
MalformedInput = _make("MalformedInput", "A document or argument could not be parsed.")

# central_charge
InvalidParameter = _make("InvalidParameter", "(J+L) fails to be positive on some generator.")
NotInLowerHalf = _make("NotInLowerHalf", "A charge value lies outside the completed lower half-plane.")
ZeroObject = _make("ZeroObject", "Slope of the zero class is undefined.")
InadmissibleClass = _make("InadmissibleClass", "A class with zero curve part must have positive Euler characteristic.")

# object_model
NotALattice = _make("NotALattice", "The declared order is not a lattice.")
NonMonotone = _make("NonMonotone", "A <= B but beta(B) - beta(A) is not effective.")
NonModular = _make("NonModular", "class(A v B) + class(A ^ B) != class(A) + class(B).")
ImpureNode = _make("ImpureNode", "A nonzero node of a pure model has zero curve class.")
BadBottomOrTop = _make("BadBottomOrTop", "Bottom/top nodes are missing or carry wrong classes.")
InadmissibleQuotient = _make("InadmissibleQuotient", "class(B) - class(A) is not admissible for A < B.")
SaturationMismatch = _make("SaturationMismatch", "Declared saturation flag disagrees with quotient purity.")
NotPure = _make("NotPure", "Stability is only defined for pure models.")
NonUniqueMaximalDestabilizer = _make(
    "NonUniqueMaximalDestabilizer", "Max-slope nodes have no common maximal element."
)
NotSemistable = _make("NotSemistable", "The model is not semistable.")
ZeroImaginaryPart = _make("ZeroImaginaryPart", "The charge has zero imaginary part.")
ChargeMismatch = _make("ChargeMismatch", "The supplied charge is not the charge of the model.")

# wall_chamber
EmptyBox = _make("EmptyBox", "A box interval is empty or has invalid vertices.")
InvalidWall = _make("InvalidWall", "Wall datum violates 0 < xi < beta0.")
DegenerateCharge = _make("DegenerateCharge", "A class has zero imaginary charge where a slope is needed.")
NotOnWall = _make("NotOnWall", "The crossing point lies on no actual wall.")
NotAdjacent = _make("NotAdjacent", "The crossing points are not in adjacent chambers.")
