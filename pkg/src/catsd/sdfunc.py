"""Similarity-dissimilarity functions over performance differences.

An SD function maps a performance difference delta to an intensity in
[-1, 1]: positive values express similarity, negative values
dissimilarity, -1 is total dissimilarity (veto). Functions are piecewise
constant or affine, written and parsed as condition/value rows, or built
from elicited thresholds plus deck-of-cards intensity rankings.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction

from .errors import CatsdError

TOLERANCE = 1e-9

_INF = float("inf")


class DomainKind(str, Enum):
    CARDINAL = "Cardinal"
    ORDINAL = "Ordinal"


class SDComponent(str, Enum):
    """The four elicited segments of an SD function.

    Wire tokens f1..f4 name the segments in axis order: dissimilarity
    then similarity left of zero, similarity then dissimilarity right of
    it.
    """

    LOWER_DISSIMILARITY = "f1"
    LOWER_SIMILARITY = "f2"
    UPPER_SIMILARITY = "f3"
    UPPER_DISSIMILARITY = "f4"


@dataclass(frozen=True)
class Constant:
    c: float


@dataclass(frozen=True)
class Affine:
    slope: float
    intercept: float


def eval_value(value: Constant | Affine, x: float) -> float:
    if isinstance(value, Constant):
        return value.c
    return value.slope * x + value.intercept


@dataclass(frozen=True)
class Piece:
    lower: float
    upper: float
    lower_closed: bool
    upper_closed: bool
    value: Constant | Affine

    def contains(self, delta: float) -> bool:
        if delta < self.lower or (delta == self.lower and not self.lower_closed):
            return False
        if delta > self.upper or (delta == self.upper and not self.upper_closed):
            return False
        return True


@dataclass(frozen=True)
class SDFunction:
    id: str
    pieces: tuple[Piece, ...]
    domain_kind: DomainKind

    def span(self) -> tuple[float, float]:
        return self.pieces[0].lower, self.pieces[-1].upper


@dataclass
class ThresholdSet:
    """Six zone boundaries, each constant or affine in the reference level.

    t/t_prime close the similar zones, u/u_prime open the dissimilar
    zones, v/v_prime start total dissimilarity; primed kinds act left of
    zero. At any level the ordering v >= u >= t >= 0 must hold per side.
    """

    t: Constant | Affine
    t_prime: Constant | Affine
    u: Constant | Affine
    u_prime: Constant | Affine
    v: Constant | Affine
    v_prime: Constant | Affine

    def kinds(self) -> dict[str, Constant | Affine]:
        return {
            "t": self.t,
            "t_prime": self.t_prime,
            "u": self.u,
            "u_prime": self.u_prime,
            "v": self.v,
            "v_prime": self.v_prime,
        }


@dataclass
class DeckRanking:
    """Ordered subsets of items, least important first, with blank-card
    counts between consecutive subsets (len(blanks) == len(subsets) - 1)."""

    subsets: list[list[str]]
    blanks: list[int]


# ---------------------------------------------------------------- parsing

_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)"
    r"|(?P<num>\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op><=|>=|==|[<>&+\-*/])"
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    i = 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise CatsdError("PARSE_ERROR", f"unexpected character {text[i]!r}", position=i)
        if m.lastgroup != "ws":
            tokens.append(_Token(m.lastgroup, m.group(), i))
        i = m.end()
    return tokens


class _Cursor:
    def __init__(self, tokens: list[_Token], text: str):
        self.tokens = tokens
        self.text = text
        self.i = 0

    def peek(self) -> _Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self) -> _Token:
        tok = self.peek()
        if tok is None:
            raise CatsdError("PARSE_ERROR", "unexpected end of input", position=len(self.text))
        self.i += 1
        return tok

    def at_op(self, *ops: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == "op" and tok.text in ops

    def done(self) -> bool:
        return self.i >= len(self.tokens)

    def fail(self, message: str) -> CatsdError:
        tok = self.peek()
        pos = tok.pos if tok is not None else len(self.text)
        return CatsdError("PARSE_ERROR", message, position=pos)


def _parse_signed_number(cur: _Cursor) -> float:
    sign = 1.0
    while cur.at_op("+", "-"):
        if cur.take().text == "-":
            sign = -sign
    tok = cur.peek()
    if tok is None or tok.kind != "num":
        raise cur.fail("expected a number")
    cur.take()
    val = float(tok.text)
    # simple fraction literal, e.g. 3/2
    if cur.at_op("/"):
        nxt = cur.tokens[cur.i + 1] if cur.i + 1 < len(cur.tokens) else None
        if nxt is not None and nxt.kind == "num":
            cur.take()
            val /= float(cur.take().text)
    return sign * val


def parse_value(text: str) -> Constant | Affine:
    """Parse a value expression: a number or an affine form in d,
    e.g. "0.4", "3/2", "d/3 + 1", "-0.5*d + 1", "1 - d/2"."""
    cur = _Cursor(_tokenize(text), text)
    slope = 0.0
    intercept = 0.0
    first = True
    while not cur.done() or first:
        sign = 1.0
        if not first:
            if not cur.at_op("+", "-"):
                raise cur.fail("expected + or -")
            while cur.at_op("+", "-"):
                if cur.take().text == "-":
                    sign = -sign
        else:
            while cur.at_op("+", "-"):
                if cur.take().text == "-":
                    sign = -sign
        first = False
        tok = cur.peek()
        if tok is None:
            raise cur.fail("expected a term")
        if tok.kind == "name" and tok.text == "d":
            cur.take()
            coef = sign
            if cur.at_op("/"):
                cur.take()
                div = _parse_signed_number(cur)
                if div == 0:
                    raise cur.fail("division by zero")
                coef /= div
            slope += coef
        elif tok.kind == "num":
            val = _parse_signed_number(cur)
            if cur.at_op("*"):
                cur.take()
                nxt = cur.peek()
                if nxt is None or nxt.kind != "name" or nxt.text != "d":
                    raise cur.fail("expected d after *")
                cur.take()
                slope += sign * val
            else:
                intercept += sign * val
        else:
            raise cur.fail(f"unexpected token {tok.text!r}")
    if slope == 0.0:
        return Constant(intercept)
    return Affine(slope, intercept)


def parse_condition(text: str) -> tuple[float, bool, float, bool]:
    """Parse a condition into (lower, lower_closed, upper, upper_closed).

    Accepted forms: "always", "d <= -2", "-1 == d", "d > 2 & d <= 5",
    and the chained "-6 < d <= -3".
    """
    cur = _Cursor(_tokenize(text), text)
    tok = cur.peek()
    if tok is not None and tok.kind == "name" and tok.text == "always":
        cur.take()
        if not cur.done():
            raise cur.fail("trailing input after 'always'")
        return (-_INF, False, _INF, False)

    lower, lower_closed = -_INF, False
    upper, upper_closed = _INF, False

    def apply(op: str, d_on_left: bool, num: float) -> None:
        nonlocal lower, lower_closed, upper, upper_closed
        if not d_on_left:
            op = {"<": ">", "<=": ">=", ">": "<", ">=": "<=", "==": "=="}[op]
        bounds = []
        if op in ("<", "<="):
            bounds.append(("upper", num, op == "<="))
        elif op in (">", ">="):
            bounds.append(("lower", num, op == ">="))
        else:
            bounds.append(("lower", num, True))
            bounds.append(("upper", num, True))
        for side, val, closed in bounds:
            if side == "lower":
                if val > lower:
                    lower, lower_closed = val, closed
                elif val == lower:
                    lower_closed = lower_closed and closed
            else:
                if val < upper:
                    upper, upper_closed = val, closed
                elif val == upper:
                    upper_closed = upper_closed and closed

    def parse_cmp() -> None:
        tok = cur.peek()
        if tok is not None and tok.kind == "name":
            if tok.text != "d":
                raise cur.fail(f"unknown symbol {tok.text!r}")
            cur.take()
            op_tok = cur.take()
            if op_tok.kind != "op" or op_tok.text not in ("<", "<=", "==", ">", ">="):
                raise cur.fail("expected a comparison operator")
            apply(op_tok.text, True, _parse_signed_number(cur))
            return
        num = _parse_signed_number(cur)
        op_tok = cur.take()
        if op_tok.kind != "op" or op_tok.text not in ("<", "<=", "==", ">", ">="):
            raise cur.fail("expected a comparison operator")
        d_tok = cur.take()
        if d_tok.kind != "name" or d_tok.text != "d":
            raise cur.fail("expected d")
        apply(op_tok.text, False, num)
        # chained form: number op d op number
        if cur.at_op("<", "<=", ">", ">="):
            op2 = cur.take().text
            if {op_tok.text[0], op2[0]} not in ({"<"}, {">"}):
                raise cur.fail("chained comparison must run one way")
            apply(op2, True, _parse_signed_number(cur))

    parse_cmp()
    while cur.at_op("&"):
        cur.take()
        parse_cmp()
    if not cur.done():
        raise cur.fail("trailing input")

    if lower > upper or (lower == upper and not (lower_closed and upper_closed)):
        raise CatsdError("PARSE_ERROR", "condition selects no values", position=0)
    return lower, lower_closed, upper, upper_closed


def parse_sd_rows(
    rows: list[tuple[str, str]],
    id: str = "sd",
    domain_kind: DomainKind | None = None,
) -> SDFunction:
    """Build an SD function from (condition, value) text rows.

    The domain kind is inferred unless given: any "==" condition makes
    the function ordinal (checked at integer points), otherwise cardinal
    (pieces must tile contiguously).
    """
    if not rows:
        raise CatsdError("PARSE_ERROR", "an SD function needs at least one row", row=0)
    pieces = []
    saw_point = False
    for idx, (cond_text, value_text) in enumerate(rows, start=1):
        try:
            lower, lower_closed, upper, upper_closed = parse_condition(cond_text)
            value = parse_value(value_text)
        except CatsdError as err:
            context = dict(err.context)
            context["row"] = idx
            raise CatsdError(err.code, err.args[0], **context) from None
        if lower == upper:
            saw_point = True
        pieces.append(Piece(lower, upper, lower_closed, upper_closed, value))
    kind = domain_kind
    if kind is None:
        kind = DomainKind.ORDINAL if saw_point else DomainKind.CARDINAL
    pieces.sort(key=lambda p: (p.lower, p.upper))
    _check_pieces(pieces, kind, id)
    return SDFunction(id, tuple(pieces), kind)


# ------------------------------------------------------------- validation

def _piece_edge_values(piece: Piece) -> tuple[float, float]:
    """Values at the closure endpoints (flat pieces need no evaluation)."""
    v = piece.value
    if isinstance(v, Constant):
        return v.c, v.c
    if v.slope == 0:
        return v.intercept, v.intercept
    return eval_value(v, piece.lower), eval_value(v, piece.upper)


def _check_pieces(pieces: list[Piece], kind: DomainKind, id: str) -> None:
    for p in pieces:
        if p.lower > p.upper or (p.lower == p.upper and not (p.lower_closed and p.upper_closed)):
            raise ValueError(f"malformed piece bounds in {id!r}: {p}")
        if (p.lower == -_INF and p.lower_closed) or (p.upper == _INF and p.upper_closed):
            raise ValueError(f"infinite bounds must be open in {id!r}")
        slope = 0.0 if isinstance(p.value, Constant) else p.value.slope
        if slope != 0.0 and (p.lower == -_INF or p.upper == _INF):
            raise CatsdError(
                "VALUE_OUT_OF_RANGE",
                "an unbounded piece must have a constant value",
                function=id,
            )
        for edge in _piece_edge_values(p):
            if not (-1.0 - TOLERANCE <= edge <= 1.0 + TOLERANCE):
                raise CatsdError(
                    "VALUE_OUT_OF_RANGE",
                    f"piece value {edge} escapes [-1, 1]",
                    function=id,
                )

    for prev, nxt in zip(pieces, pieces[1:]):
        if prev.upper > nxt.lower:
            raise CatsdError(
                "OVERLAPPING_PIECES",
                f"pieces overlap near delta={nxt.lower}",
                function=id,
            )
        if prev.upper == nxt.lower:
            if prev.upper_closed and nxt.lower_closed:
                raise CatsdError(
                    "OVERLAPPING_PIECES",
                    f"delta={nxt.lower} is owned by two pieces",
                    function=id,
                )
            if not prev.upper_closed and not nxt.lower_closed and not _gap_allowed(prev, nxt, kind):
                raise CatsdError(
                    "COVERAGE_GAP",
                    f"delta={nxt.lower} is covered by no piece",
                    function=id,
                )
        elif not _gap_allowed(prev, nxt, kind):
            raise CatsdError(
                "COVERAGE_GAP",
                f"gap between delta={prev.upper} and delta={nxt.lower}",
                function=id,
            )

    zero_piece = next((p for p in pieces if p.contains(0.0)), None)
    if zero_piece is None:
        raise CatsdError("COVERAGE_GAP", "the function must be defined at delta=0", function=id)
    if eval_value(zero_piece.value, 0.0) < -TOLERANCE:
        raise CatsdError(
            "VALUE_OUT_OF_RANGE",
            "the value at zero difference must be nonnegative",
            function=id,
        )

    if kind is DomainKind.ORDINAL:
        _check_monotone_ordinal(pieces, id)
    else:
        _check_monotone_cardinal(pieces, id)


def _gap_allowed(prev: Piece, nxt: Piece, kind: DomainKind) -> bool:
    """Ordinal functions may skip stretches holding no integer."""
    if kind is not DomainKind.ORDINAL:
        return False
    if nxt.lower - prev.upper > 1:
        return False
    k = math.floor(prev.upper)
    while k <= nxt.lower:
        after_prev = k > prev.upper or (k == prev.upper and not prev.upper_closed)
        before_nxt = k < nxt.lower or (k == nxt.lower and not nxt.lower_closed)
        if after_prev and before_nxt:
            return False
        k += 1
    return True


def _check_monotone_ordinal(pieces: list[Piece], id: str) -> None:
    finite = [b for p in pieces for b in (p.lower, p.upper) if b not in (-_INF, _INF)]
    lo = math.floor(min(finite)) - 1 if finite else -1
    hi = math.ceil(max(finite)) + 1 if finite else 1
    samples = []
    for n in range(int(lo), int(hi) + 1):
        piece = next((p for p in pieces if p.contains(float(n))), None)
        if piece is not None:
            samples.append((float(n), eval_value(piece.value, float(n))))
    for (x1, v1), (x2, v2) in zip(samples, samples[1:]):
        if x2 <= 0 and v1 > v2 + TOLERANCE:
            raise CatsdError("NON_MONOTONE", f"value drops between delta={x1} and {x2}", function=id)
        if x1 >= 0 and v1 < v2 - TOLERANCE:
            raise CatsdError("NON_MONOTONE", f"value climbs between delta={x1} and {x2}", function=id)


def _check_monotone_cardinal(pieces: list[Piece], id: str) -> None:
    for p in pieces:
        if isinstance(p.value, Constant) or p.value.slope == 0:
            continue
        if p.upper <= 0 and p.value.slope < -TOLERANCE:
            raise CatsdError("NON_MONOTONE", "values must not fall while delta rises toward 0", function=id)
        if p.lower >= 0 and p.value.slope > TOLERANCE:
            raise CatsdError("NON_MONOTONE", "values must not rise as delta grows past 0", function=id)
        if p.lower < 0 < p.upper:
            raise CatsdError("NON_MONOTONE", "a piece straddling 0 must be flat", function=id)
    for prev, nxt in zip(pieces, pieces[1:]):
        x = nxt.lower
        left = _piece_edge_values(prev)[1]
        right = _piece_edge_values(nxt)[0]
        if x < 0 or (x == 0 and not prev.upper_closed):
            if left > right + TOLERANCE:
                raise CatsdError("NON_MONOTONE", f"value drops approaching delta={x}", function=id)
        else:
            if left < right - TOLERANCE:
                raise CatsdError("NON_MONOTONE", f"value climbs past delta={x}", function=id)


def check_sd_function(f: SDFunction) -> None:
    """Re-run the structural checks on an already built function."""
    _check_pieces(list(f.pieces), f.domain_kind, f.id)


# ------------------------------------------------------------- formatting

def format_number(x: float) -> str:
    """Shortest faithful text: integer, short decimal, or exact fraction."""
    if x == int(x) and abs(x) < 1e15:
        return str(int(x))
    text = repr(float(x))
    if len(text) <= 8:
        return text
    frac = Fraction(x).limit_denominator(10**6)
    if float(frac) == x:
        return f"{frac.numerator}/{frac.denominator}"
    return text


def _format_slope(slope: float) -> str:
    if slope == 1.0:
        return "d"
    if slope == -1.0:
        return "-d"
    inv = round(1.0 / slope)
    if inv != 0 and 1.0 / inv == slope:
        return f"d/{inv}" if inv > 0 else f"-d/{-inv}"
    return f"{format_number(slope)}*d"


def format_value(value: Constant | Affine) -> str:
    if isinstance(value, Constant):
        return format_number(value.c)
    head = _format_slope(value.slope)
    if value.intercept == 0:
        return head
    if value.intercept > 0:
        return f"{head} + {format_number(value.intercept)}"
    return f"{head} - {format_number(-value.intercept)}"


def format_condition(piece: Piece) -> str:
    lo, hi = piece.lower, piece.upper
    if lo == -_INF and hi == _INF:
        return "always"
    if lo == -_INF:
        op = "<=" if piece.upper_closed else "<"
        return f"d {op} {format_number(hi)}"
    if hi == _INF:
        op = ">=" if piece.lower_closed else ">"
        return f"d {op} {format_number(lo)}"
    if lo == hi:
        return f"d == {format_number(lo)}"
    lo_op = "<=" if piece.lower_closed else "<"
    hi_op = "<=" if piece.upper_closed else "<"
    return f"{format_number(lo)} {lo_op} d {hi_op} {format_number(hi)}"


def format_sd_rows(f: SDFunction) -> list[tuple[str, str]]:
    """Inverse of parse_sd_rows: canonical (condition, value) rows."""
    return [(format_condition(p), format_value(p.value)) for p in f.pieces]


# ------------------------------------------------------------- evaluation

def eval_sd(f: SDFunction, delta: float) -> float:
    for piece in f.pieces:
        if piece.contains(delta):
            return eval_value(piece.value, delta)
    raise CatsdError(
        "OUT_OF_DOMAIN",
        f"no piece of {f.id!r} covers delta={delta}",
        function=f.id,
        delta=delta,
    )


def split_sd(f: SDFunction, delta: float) -> tuple[float, float]:
    """Similarity and dissimilarity parts: (max(f, 0), min(f, 0))."""
    value = eval_sd(f, delta)
    return max(value, 0.0), min(value, 0.0)


# ----------------------------------------------------------- construction

def _exact(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(str(x))  # decimal-faithful, so 0.1 becomes 1/10


def fit_affine_threshold(low_level, low_diff, high_level, high_diff) -> Constant | Affine:
    """Fit one threshold from the probe answers at two reference levels.

    Equal differences give a constant threshold; otherwise the unique
    affine map through both points, in exact rational arithmetic.
    """
    if low_level == high_level:
        raise ValueError("the two probe levels must differ")
    if low_diff < 0 or high_diff < 0:
        raise ValueError("threshold differences must be nonnegative")
    if low_diff == high_diff:
        return Constant(_exact(low_diff))
    ll, ld = _exact(low_level), _exact(low_diff)
    hl, hd = _exact(high_level), _exact(high_diff)
    alpha = (hd - ld) / (hl - ll)
    beta = ld - alpha * ll
    return Affine(alpha, beta)


def threshold_at(kind: Constant | Affine, level) -> Fraction:
    """Evaluate a threshold at a reference level, exactly."""
    if isinstance(kind, Constant):
        return _exact(kind.c)
    return _exact(kind.slope) * _exact(level) + _exact(kind.intercept)


_COMPONENT_ENDPOINTS = {
    SDComponent.LOWER_DISSIMILARITY: (Fraction(-1), Fraction(0)),
    SDComponent.LOWER_SIMILARITY: (Fraction(0), Fraction(1)),
    SDComponent.UPPER_SIMILARITY: (Fraction(1), Fraction(0)),
    SDComponent.UPPER_DISSIMILARITY: (Fraction(0), Fraction(-1)),
}


def deck_intensities(ranking: DeckRanking, component: SDComponent | str) -> dict[int, Fraction]:
    """Intensity per subset index for one component of an SD function.

    The first and last subsets carry the component's fixed endpoint
    values; interior subsets step by alpha times the card distance, where
    alpha = 1 / sum(blanks_i + 1).
    """
    component = SDComponent(component)
    r = len(ranking.subsets)
    if r < 2:
        raise CatsdError(
            "DEGENERATE_RANKING",
            "intensity construction needs at least two ranked subsets",
            subsets=r,
        )
    blanks = list(ranking.blanks)
    if len(blanks) != r - 1:
        raise ValueError("blanks must hold one count per consecutive subset pair")
    if any(int(b) != b or b < 0 for b in blanks):
        raise ValueError("blank-card counts must be nonnegative integers")
    seen: set[str] = set()
    for subset in ranking.subsets:
        if not subset:
            raise ValueError("ranked subsets must be non-empty")
        for item in subset:
            if item in seen:
                raise ValueError(f"item {item!r} appears in two subsets")
            seen.add(item)
    start, end = _COMPONENT_ENDPOINTS[component]
    h = sum(int(b) + 1 for b in blanks)
    alpha = Fraction(1, h)
    out: dict[int, Fraction] = {}
    distance = 0
    for k in range(r):
        if k > 0:
            distance += int(blanks[k - 1]) + 1
        out[k] = start + (end - start) * alpha * distance
    return out


def interpolate_linear(knots) -> list[Piece]:
    """Pieces connecting consecutive (delta, intensity) knots.

    The leftmost knot is included (closed lower bound); every other piece
    is lower-open, upper-closed. Exact at the knots.
    """
    pts = sorted(((float(x), y) for x, y in knots), key=lambda p: p[0])
    if len(pts) < 2:
        raise ValueError("interpolation needs at least two knots")
    for (x1, _), (x2, _) in zip(pts, pts[1:]):
        if x1 == x2:
            raise CatsdError("DUPLICATE_KNOT", f"two knots share delta={x1}", delta=x1)
    pieces = []
    for i, ((x1, y1), (x2, y2)) in enumerate(zip(pts, pts[1:])):
        slope = (y2 - y1) / (x2 - x1)
        if slope == 0:
            value: Constant | Affine = Constant(float(y1))
        else:
            value = Affine(float(slope), float(y1 - slope * x1))
        pieces.append(Piece(x1, x2, i == 0, True, value))
    return pieces


def assemble_sd(
    thresholds: ThresholdSet,
    reference_level,
    intensities: dict | None = None,
    id: str = "sd",
) -> SDFunction:
    """Build a full SD function from thresholds evaluated at one level.

    `intensities` optionally maps a component (SDComponent or its token)
    to interior (delta, intensity) knots strictly inside that component's
    zone; without knots a zone is a straight ramp between its endpoint
    anchors. Values are -1 beyond v and v_prime, 0 on the neutral gaps.
    """
    values = {name: threshold_at(kind, reference_level) for name, kind in thresholds.kinds().items()}
    for name, val in values.items():
        if val < 0:
            raise CatsdError(
                "THRESHOLD_ORDER_VIOLATION",
                f"threshold {name} is negative at level {reference_level}",
                threshold=name,
            )
    for seq in (("t", "u", "v"), ("t_prime", "u_prime", "v_prime")):
        for small, big in zip(seq, seq[1:]):
            if values[small] > values[big]:
                raise CatsdError(
                    "THRESHOLD_ORDER_VIOLATION",
                    f"{big} must not be smaller than {small} at level {reference_level}",
                    threshold=big,
                )

    knots: dict[SDComponent, list] = {c: [] for c in SDComponent}
    for key, pts in (intensities or {}).items():
        knots[SDComponent(key)] = sorted((float(x), y) for x, y in pts)

    t, tp = float(values["t"]), float(values["t_prime"])
    u, up = float(values["u"]), float(values["u_prime"])
    v, vp = float(values["v"]), float(values["v_prime"])

    pieces: list[Piece] = [Piece(-_INF, -vp, False, True, Constant(-1.0))]
    _append_ramp(pieces, -vp, -1.0, -up, 0.0, knots[SDComponent.LOWER_DISSIMILARITY])
    _append_flat(pieces, -up, -tp, 0.0)
    _append_ramp(pieces, -tp, 0.0, 0.0, 1.0, knots[SDComponent.LOWER_SIMILARITY])
    _append_ramp(pieces, 0.0, 1.0, t, 0.0, knots[SDComponent.UPPER_SIMILARITY])
    _append_flat(pieces, t, u, 0.0)
    _append_ramp(pieces, u, 0.0, v, -1.0, knots[SDComponent.UPPER_DISSIMILARITY])
    pieces.append(Piece(v, _INF, False, False, Constant(-1.0)))

    _check_pieces(pieces, DomainKind.CARDINAL, id)
    return SDFunction(id, tuple(pieces), DomainKind.CARDINAL)


def _append_flat(pieces: list[Piece], x1: float, x2: float, value: float) -> None:
    if x1 == x2:
        return
    pieces.append(Piece(x1, x2, False, True, Constant(value)))


def _append_ramp(pieces: list[Piece], x1: float, y1: float, x2: float, y2: float, interior) -> None:
    if x1 == x2:
        if interior:
            raise ValueError(f"intensity knots given for the empty zone at delta={x1}")
        return
    for kx, _ in interior:
        if not (x1 < kx < x2):
            raise ValueError(f"intensity knot at delta={kx} falls outside its zone ({x1}, {x2})")
    segment = interpolate_linear([(x1, y1), *interior, (x2, y2)])
    segment[0] = replace(segment[0], lower_closed=False)
    pieces.extend(segment)
