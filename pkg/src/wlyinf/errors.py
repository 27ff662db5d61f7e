"""Exception hierarchy shared by the library and the command line."""


class WlyError(Exception):
    """Base class for all errors raised by :mod:`wlyinf`."""


class StructuralError(WlyError, ValueError):
    """Operands live in different rings or have mismatched lengths."""


class DegenerateInput(WlyError, ValueError):
    pass


class NotMixed(WlyError, ValueError):
    """The polynomial has a single weighted-degree bucket, so no gap k exists."""


class DegenerateWeights(WlyError, ValueError):
    pass


class NotCurve(WlyError):
    """The singular locus of the top form is not one-dimensional."""


class NonRationalBranch(WlyError):
    """A branch of the singular locus has no rational point on the searched slices."""


class NonIsolatedGerm(WlyError):
    pass


class NonInvariantJacobian(WlyError):
    """The Jacobian ideal of a transversal germ is not stable under the isotropy action."""


class NotApplicable(WlyError, ValueError):
    pass


class HypothesisFailure(WlyError):
    """No proven formula applies and conjectural results were not allowed."""


class ParseError(WlyError, ValueError):
    def __init__(self, message, line=1, column=1, text=""):
        super().__init__(f"{message} at line {line}, column {column}")
        self.message = message
        self.line = line
        self.column = column
        self.text = text
