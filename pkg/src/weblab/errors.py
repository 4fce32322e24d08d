"""Exception types shared across the package."""

from __future__ import annotations


class WeblabError(Exception):
    """Base class for every error raised by weblab."""


class InvalidShape(WeblabError, ValueError):
    pass


class MalformedWord(WeblabError, ValueError):
    """A boundary word violates a balance or Yamanouchi condition."""


class Unbalanced(MalformedWord):
    pass


class YamanouchiViolation(MalformedWord):
    pass


class NotGraded(WeblabError):
    """A covering edge of the tableau poset does not raise BFS rank by one."""


class InvalidEmbedding(WeblabError):
    """Dart permutations do not describe a planar embedding."""


class NotManifold(WeblabError):
    """A vertex meets the band diagram in 1 or 3 edges."""


class CoefficientOverflow(WeblabError, OverflowError):
    """A web coefficient left the signed 64-bit range."""


class PathInconsistent(WeblabError):
    """Two incoming Hasse edges produced different images under the transition map."""


class SolveFailed(WeblabError):
    pass


class CycleDetected(WeblabError):
    pass


class Capacity(WeblabError, MemoryError):
    pass
