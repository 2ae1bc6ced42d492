"""Exception types raised by polyflower."""

from __future__ import annotations


class PolyflowerError(Exception):
    """Base class for every error raised by this package."""


class InvalidSideCount(PolyflowerError, ValueError):
    pass


class InvalidCenter(PolyflowerError, ValueError):
    pass


class UnknownEdge(PolyflowerError, KeyError):
    pass


class Disconnected(PolyflowerError, ValueError):
    pass


class NotPlanarDecomposed(PolyflowerError, ValueError):
    """Raised when a graph carries no face cycles (e.g. after contraction)."""


class NonSquare(PolyflowerError, ValueError):
    pass


class BadIndex(PolyflowerError, IndexError):
    pass


class InfiniteGroup(PolyflowerError, ValueError):
    pass


class TrivialChain(PolyflowerError, ValueError):
    pass


class UnequalPetals(PolyflowerError, ValueError):
    pass


class InvalidPartition(PolyflowerError, ValueError):
    pass


class BadParameters(PolyflowerError, ValueError):
    pass
