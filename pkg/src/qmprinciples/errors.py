"""Exception hierarchy.

Validation problems (bad matrices, bad relations, bad files) derive from
``ValidationError``.  Mathematical findings that are legitimate negative
results (a violated theorem hypothesis, an infeasible map) derive from
``HypothesisError``.  ``InternalCheckError`` signals a bug: it is raised when a
certificate that the theory guarantees fails its own exact re-check.
"""

from __future__ import annotations


class QMError(Exception):
    pass


# -- invalid input -----------------------------------------------------------

class ValidationError(QMError, ValueError):
    pass


class NonSquareError(ValidationError):
    pass


class AxiomViolation(ValidationError):
    """A distance matrix breaks one of QM1, QM2, QM3.

    ``witness`` is the offending index pair or triple.
    """

    def __init__(self, axiom: str, witness: tuple, message: str = ""):
        self.axiom = axiom
        self.witness = witness
        super().__init__(message or f"{axiom} violated at {witness}")


class NegativeEntryError(AxiomViolation):
    def __init__(self, witness: tuple):
        super().__init__("QM1", witness, f"negative distance at {witness}")


class NotReflexive(ValidationError):
    def __init__(self, x: int):
        self.witness = (x,)
        super().__init__(f"relation not reflexive at {x}")


class NotTransitive(ValidationError):
    def __init__(self, x: int, y: int, z: int):
        self.witness = (x, y, z)
        super().__init__(f"relation not transitive: {x}<={y}<={z} but not {x}<={z}")


class EmptySequence(ValidationError):
    pass


class StartOutsideDomain(ValidationError):
    pass


class PreconditionNotMet(ValidationError):
    pass


class ParseError(ValidationError):
    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class VersionUnsupported(ParseError):
    def __init__(self, line: int, version: str):
        super().__init__(line, f"unsupported format version {version!r}")


class AuditMissing(QMError):
    """Solver called on an instance whose standing audits did not all pass."""


class NotRightKCauchy(QMError):
    pass


class NotT1(QMError):
    pass


# -- legitimate negative findings --------------------------------------------

class HypothesisError(QMError):
    pass


class HypothesisViolated(HypothesisError):
    def __init__(self, phi_x0, bound):
        self.phi_x0 = phi_x0
        self.bound = bound
        super().__init__(f"phi(x0) = {phi_x0} exceeds eps + inf phi = {bound}")


class InfeasibleMap(HypothesisError):
    def __init__(self, witness: int):
        self.witness = witness
        super().__init__(f"map violates the S-set condition at point {witness}")


# -- bugs ---------------------------------------------------------------------

class InternalCheckError(QMError, AssertionError):
    pass


class CertificateCheckFailed(InternalCheckError):
    pass


class ConsistencyViolation(InternalCheckError):
    pass
