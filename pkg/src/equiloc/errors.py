"""Exception hierarchy.

Every mathematical rejection raised by the library derives from
:class:`EquilocError`; the CLI maps those to exit status 3 and prints the
class name.
"""


class EquilocError(Exception):
    @property
    def name(self) -> str:
        return type(self).__name__


# numeric kernel / exponential sums

class NonInvertibleLeadingTerm(EquilocError):
    pass


class MixedBasis(EquilocError):
    pass


class NegativePowerResidue(EquilocError):
    """A negative power of ``u`` survived in what should be a power series."""

    def __init__(self, k, value):
        self.k = k
        self.value = value
        super().__init__(f"coefficient of u^-{k} is {value}, expected 0")


class TruncationError(EquilocError):
    pass


# polytopes

class PolytopeError(EquilocError):
    pass


class InfeasibleParameters(PolytopeError):
    pass


class NonPrimitiveNormal(PolytopeError):
    pass


class ZeroNormal(PolytopeError):
    pass


class Unbounded(PolytopeError):
    pass


class Degenerate(PolytopeError):
    pass


class EmptyPolytope(PolytopeError):
    pass


class NotDelzant(PolytopeError):
    def __init__(self, report):
        self.report = report
        super().__init__("; ".join(report.violations))


class DimensionMismatch(EquilocError):
    pass


class ZeroVector(EquilocError):
    pass


class ParametricUnsupported(EquilocError):
    pass


# localization

class DegenerateWeight(EquilocError):
    pass


class BadProbe(EquilocError):
    pass


class ResidueError(EquilocError):
    pass


class ProbeDependence(EquilocError):
    pass


# decisions

class TypeNotZero(EquilocError):
    pass


class ZeroComponent(EquilocError):
    pass


class ConsistencyError(EquilocError):
    """A decision verdict disagreed with the exact S comparison."""


# coadjoint orbits

class InvalidOrbit(EquilocError):
    pass


class NonRegular(EquilocError):
    pass
