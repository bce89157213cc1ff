"""Criteria weights from a ranked deck of cards.

The analyst orders criteria subsets from least to most important,
inserting blank cards to widen gaps, and states the ratio z between the
most and least important subsets. Weight computation is exact rational
arithmetic end to end; rounding happens only in the display helpers.

Note: the summations run over the r-1 gaps between consecutive subsets
(a formulation sometimes misprinted with r terms); this variant is the
one that reproduces the published weight tables.
"""

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction

from .errors import CatsdError
from .sdfunc import DeckRanking


@dataclass
class WeightElicitation:
    ranking: DeckRanking
    z: float


def _exact(value) -> Fraction:
    if isinstance(value, float):
        return Fraction(str(value))
    return Fraction(value)


def _check_ranking(ranking: DeckRanking) -> None:
    if not ranking.subsets or not any(ranking.subsets):
        raise CatsdError("EMPTY_RANKING", "the ranking holds no criteria")
    if len(ranking.blanks) != len(ranking.subsets) - 1:
        raise ValueError("blanks must hold one count per consecutive subset pair")
    if any(int(b) != b or b < 0 for b in ranking.blanks):
        raise ValueError("blank-card counts must be nonnegative integers")
    seen = set()
    for subset in ranking.subsets:
        if not subset:
            raise CatsdError("EMPTY_RANKING", "a ranked subset holds no criteria")
        for cid in subset:
            if cid in seen:
                raise ValueError(f"criterion {cid!r} appears in two subsets")
            seen.add(cid)


def srf_weights(elicitation: WeightElicitation) -> dict:
    """Non-normalized weight per criterion, least important subset at 1.

    The unit step is u = (z - 1) / e with e the blank-weighted count of
    gaps; subset k then weighs 1 + u * (gaps below k). The top subset
    always lands exactly on z.
    """
    ranking = elicitation.ranking
    _check_ranking(ranking)
    z = _exact(elicitation.z)
    if z <= 1:
        raise CatsdError(
            "Z_OUT_OF_RANGE",
            f"the importance ratio must exceed 1, got {elicitation.z}",
            z=elicitation.z,
        )
    subsets = ranking.subsets
    out: dict = {}
    if len(subsets) == 1:
        for cid in subsets[0]:
            out[cid] = Fraction(1)
        return out
    gaps = [int(b) + 1 for b in ranking.blanks]
    unit = (z - 1) / sum(gaps)
    below = 0
    for k, subset in enumerate(subsets):
        if k > 0:
            below += gaps[k - 1]
        weight = 1 + unit * below
        for cid in subset:
            out[cid] = weight
    return out


def format_weight(value) -> str:
    """Two-decimal display, half-up, trailing zeros dropped."""
    frac = _exact(value)
    quantized = (Decimal(frac.numerator) / Decimal(frac.denominator)).quantize(
        Decimal("0.01"), rounding=ROUND_HALF_UP
    )
    text = str(quantized)
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    return text


def display_weights(weights: dict) -> dict:
    return {cid: format_weight(w) for cid, w in weights.items()}
