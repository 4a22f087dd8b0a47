"""Dimensional emotion space: points, ratings, distances, neighborhoods.

Emotions live in the valence x arousal plane, each axis a rating on the
1..9 scale. Dominance may be recorded alongside but never participates in
any distance; it is the weakest of the three signals and downstream logic
treats the space as strictly two-dimensional.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import RangeError, ValidationError

RATING_MIN = 1.0
RATING_MAX = 9.0

#: Largest possible distance in the plane: the diagonal of the 8x8 square.
MAX_EMOTION_DISTANCE = math.sqrt(128.0)

#: Floor applied to distances before taking the reciprocal, so identical
#: points get a large finite similarity instead of a division error.
DEFAULT_SIMILARITY_CAP = 1e-6


def _check_rating(field: str, value: float) -> float:
    value = float(value)
    if not (RATING_MIN <= value <= RATING_MAX):  # also rejects NaN
        raise RangeError(field, value)
    return value


def _check_sd(field: str, value: float) -> float:
    value = float(value)
    if not (value >= 0.0):
        raise RangeError(field, value, bounds="[0,inf)")
    return value


@dataclass(frozen=True, slots=True)
class EmotionPoint:
    """A coordinate in the valence x arousal plane, optionally with dominance."""

    val: float
    ar: float
    dom: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "val", _check_rating("val", self.val))
        object.__setattr__(self, "ar", _check_rating("ar", self.ar))
        if self.dom is not None:
            object.__setattr__(self, "dom", _check_rating("dom", self.dom))


@dataclass(frozen=True, slots=True)
class AffectiveRating:
    """Aggregated annotation: per-axis mean and standard deviation.

    The mean is the baseline response, the SD the confidence in it.
    Projection to a point uses the means only.
    """

    val_mean: float
    val_sd: float
    ar_mean: float
    ar_sd: float
    dom_mean: float | None = None
    dom_sd: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "val_mean", _check_rating("val_mean", self.val_mean))
        object.__setattr__(self, "val_sd", _check_sd("val_sd", self.val_sd))
        object.__setattr__(self, "ar_mean", _check_rating("ar_mean", self.ar_mean))
        object.__setattr__(self, "ar_sd", _check_sd("ar_sd", self.ar_sd))
        if (self.dom_mean is None) != (self.dom_sd is None):
            raise ValidationError("dom_mean and dom_sd must be given together")
        if self.dom_mean is not None:
            object.__setattr__(self, "dom_mean", _check_rating("dom_mean", self.dom_mean))
            object.__setattr__(self, "dom_sd", _check_sd("dom_sd", self.dom_sd))

    @property
    def point(self) -> EmotionPoint:
        return EmotionPoint(self.val_mean, self.ar_mean, self.dom_mean)


@dataclass(frozen=True, slots=True)
class EmotionNeighborhood:
    """Inclusive radius on emotion distance."""

    eps_emo: float

    def __post_init__(self) -> None:
        if not (self.eps_emo > 0.0):
            raise ValidationError(f"eps_emo must be > 0, got {self.eps_emo!r}")


def emotion_distance(a: EmotionPoint, b: EmotionPoint) -> float:
    """Euclidean distance over (val, ar). Dominance is ignored."""
    return math.hypot(a.val - b.val, a.ar - b.ar)


def emotion_similarity(
    a: EmotionPoint, b: EmotionPoint, cap: float = DEFAULT_SIMILARITY_CAP
) -> float:
    """Reciprocal of emotion distance, floored at ``cap`` near zero.

    Satisfies similarity * distance == 1 wherever distance >= cap.
    """
    if not (cap > 0.0):
        raise ValidationError(f"similarity cap must be > 0, got {cap!r}")
    return 1.0 / max(emotion_distance(a, b), cap)


def within_neighborhood(a: EmotionPoint, b: EmotionPoint, nb: EmotionNeighborhood) -> bool:
    """True iff the two points are within the (inclusive) radius."""
    return emotion_distance(a, b) <= nb.eps_emo
