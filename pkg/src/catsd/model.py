"""Domain types for similarity-based nominal classification models.

A decision model bundles the criteria, their similarity-dissimilarity
functions, and one category model per nominal category. Categories carry
their own reference actions, non-normalized weights, interaction
coefficients, and a likeness threshold. Validation never raises for bad
content; it collects machine-readable issues instead.
"""

from dataclasses import dataclass, field
from enum import Enum

from .errors import CatsdError
from .sdfunc import SDFunction, check_sd_function


class Direction(str, Enum):
    MAXIMIZE = "Maximize"
    MINIMIZE = "Minimize"


@dataclass(frozen=True)
class Cardinal:
    min: float
    max: float


@dataclass(frozen=True)
class Ordinal:
    levels: int


@dataclass(frozen=True)
class Criterion:
    id: str
    name: str
    direction: Direction
    scale: Cardinal | Ordinal
    description: str = ""


@dataclass(frozen=True)
class Action:
    id: str
    name: str
    description: str = ""


@dataclass
class PerformanceTable:
    """Rows keyed by action id; each row maps criterion id to a value."""

    rows: dict


class InteractionKind(str, Enum):
    MUTUAL_STRENGTHENING = "MutualStrengthening"
    MUTUAL_WEAKENING = "MutualWeakening"
    ANTAGONISTIC = "Antagonistic"


MUTUAL_KINDS = (InteractionKind.MUTUAL_STRENGTHENING, InteractionKind.MUTUAL_WEAKENING)


@dataclass(frozen=True)
class InteractionCoefficient:
    """One pairwise effect inside a category.

    Mutual kinds read as the unordered pair {first, second}; the
    antagonistic kind is ordered (first is weakened when second opposes).
    """

    kind: InteractionKind
    first: str
    second: str
    value: float


@dataclass
class ReferenceAction:
    id: str
    performances: dict


@dataclass
class CategoryModel:
    id: str
    name: str
    reference_actions: list
    weights: dict
    interactions: list = field(default_factory=list)
    likeness_threshold: float = 0.5


@dataclass
class DecisionModel:
    criteria: list
    sd_functions: dict
    categories: list
    dummy_category_name: str = "Non-assigned"

    def criterion(self, criterion_id: str) -> Criterion:
        for c in self.criteria:
            if c.id == criterion_id:
                return c
        raise CatsdError("UNKNOWN_CRITERION", f"no criterion {criterion_id!r}", criterion=criterion_id)


# ------------------------------------------------------------- validation

@dataclass
class Issue:
    code: str
    message: str
    context: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.message, "context": dict(self.context)}


@dataclass
class ValidationReport:
    issues: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.issues

    def codes(self) -> set:
        return {issue.code for issue in self.issues}

    def add(self, code: str, message: str, **context) -> None:
        self.issues.append(Issue(code, message, context))

    def to_dict(self) -> dict:
        return {"ok": self.ok, "issues": [issue.to_dict() for issue in self.issues]}


def check_in_scale(criterion: Criterion, value) -> bool:
    """Whether a performance value fits the criterion's scale."""
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        return False
    if isinstance(criterion.scale, Ordinal):
        return float(value).is_integer() and 1 <= value <= criterion.scale.levels
    return criterion.scale.min <= value <= criterion.scale.max


def mutual_interactions(category: CategoryModel) -> list:
    return [c for c in category.interactions if c.kind in MUTUAL_KINDS]


def antagonistic_interactions(category: CategoryModel) -> list:
    return [c for c in category.interactions if c.kind is InteractionKind.ANTAGONISTIC]


def mutual_coefficient(category: CategoryModel, j: str, ell: str):
    """Mutual coefficient on the unordered pair {j, ell}, or None."""
    for c in mutual_interactions(category):
        if {c.first, c.second} == {j, ell}:
            return c.value
    return None


def check_non_negativity(category: CategoryModel, criteria: list) -> list:
    """Criteria whose weight cannot absorb its negative interactions.

    For each criterion j the slack is the weight minus the magnitudes of
    every mutual-weakening coefficient touching j and every antagonistic
    coefficient weakening j (first = j). Entries with negative slack are
    returned; an empty list means the category is safe.
    """
    ids = [c.id for c in criteria]
    known = set(ids)
    for coeff in category.interactions:
        for cid in (coeff.first, coeff.second):
            if cid not in known:
                raise CatsdError(
                    "UNKNOWN_CRITERION",
                    f"interaction in category {category.id!r} names unknown criterion {cid!r}",
                    category=category.id,
                    criterion=cid,
                )
    out = []
    for cid in ids:
        if cid not in category.weights:
            raise CatsdError(
                "MISSING_WEIGHT",
                f"category {category.id!r} has no weight for criterion {cid!r}",
                category=category.id,
                criterion=cid,
            )
        slack = category.weights[cid]
        for coeff in category.interactions:
            if coeff.kind is InteractionKind.MUTUAL_WEAKENING and cid in (coeff.first, coeff.second):
                slack -= abs(coeff.value)
            elif coeff.kind is InteractionKind.ANTAGONISTIC and coeff.first == cid:
                slack -= abs(coeff.value)
        if slack < 0:
            out.append((cid, slack))
    return out


def _check_criteria(model: DecisionModel, report: ValidationReport) -> None:
    seen = set()
    for c in model.criteria:
        if c.id in seen:
            report.add("DUPLICATE_ID", f"criterion id {c.id!r} appears twice", criterion=c.id)
        seen.add(c.id)
        if isinstance(c.scale, Cardinal):
            if not c.scale.min < c.scale.max:
                report.add(
                    "BAD_SCALE",
                    f"criterion {c.id!r} needs min < max, got [{c.scale.min}, {c.scale.max}]",
                    criterion=c.id,
                )
        elif isinstance(c.scale, Ordinal):
            if c.scale.levels < 2:
                report.add(
                    "BAD_SCALE",
                    f"criterion {c.id!r} needs at least two levels, got {c.scale.levels}",
                    criterion=c.id,
                )
        else:
            report.add("BAD_SCALE", f"criterion {c.id!r} has an unrecognized scale", criterion=c.id)


def _check_bindings(model: DecisionModel, report: ValidationReport) -> None:
    ids = {c.id for c in model.criteria}
    for c in model.criteria:
        f = model.sd_functions.get(c.id)
        if f is None:
            report.add(
                "MISSING_SD_FUNCTION",
                f"criterion {c.id!r} has no similarity-dissimilarity function",
                criterion=c.id,
            )
    for cid in model.sd_functions:
        if cid not in ids:
            report.add("UNKNOWN_CRITERION", f"SD binding names unknown criterion {cid!r}", criterion=cid)
    checked = set()
    for cid, f in model.sd_functions.items():
        if not isinstance(f, SDFunction) or id(f) in checked:
            continue
        checked.add(id(f))
        try:
            check_sd_function(f)
        except CatsdError as err:
            report.add(err.code, str(err.args[0]), function=f.id, **err.context)


def _check_interactions(category: CategoryModel, known: set, report: ValidationReport) -> None:
    mutual_pairs = set()
    antagonistic_pairs = set()
    ordered_seen = set()
    for coeff in category.interactions:
        where = {"category": category.id, "first": coeff.first, "second": coeff.second}
        if coeff.first == coeff.second:
            report.add("BAD_INTERACTION", "an interaction needs two distinct criteria", **where)
            continue
        unknown = [cid for cid in (coeff.first, coeff.second) if cid not in known]
        if unknown:
            report.add(
                "UNKNOWN_CRITERION",
                f"interaction names unknown criterion {unknown[0]!r}",
                **where,
            )
            continue
        if coeff.kind is InteractionKind.MUTUAL_STRENGTHENING and not coeff.value > 0:
            report.add("BAD_INTERACTION", "a strengthening coefficient must be positive", **where)
        if coeff.kind is InteractionKind.MUTUAL_WEAKENING and not coeff.value < 0:
            report.add("BAD_INTERACTION", "a weakening coefficient must be negative", **where)
        if coeff.kind is InteractionKind.ANTAGONISTIC and not coeff.value < 0:
            report.add("BAD_INTERACTION", "an antagonistic coefficient must be negative", **where)
        pair = frozenset((coeff.first, coeff.second))
        if coeff.kind in MUTUAL_KINDS:
            if pair in mutual_pairs:
                report.add("BAD_INTERACTION", "a pair carries at most one mutual coefficient", **where)
            mutual_pairs.add(pair)
        else:
            key = (coeff.first, coeff.second)
            if key in ordered_seen:
                report.add("BAD_INTERACTION", "duplicate antagonistic coefficient", **where)
            ordered_seen.add(key)
            antagonistic_pairs.add(pair)
    for pair in mutual_pairs & antagonistic_pairs:
        a, b = sorted(pair)
        report.add(
            "BAD_INTERACTION",
            f"criteria {a!r} and {b!r} cannot carry both a mutual and an antagonistic coefficient",
            category=category.id,
            first=a,
            second=b,
        )


def _check_category(category: CategoryModel, model: DecisionModel, report: ValidationReport) -> None:
    known = {c.id for c in model.criteria}
    if not category.reference_actions:
        report.add(
            "EMPTY_CATEGORY",
            f"category {category.id!r} needs at least one reference action",
            category=category.id,
        )
    ref_ids = set()
    for ref in category.reference_actions:
        if ref.id in ref_ids:
            report.add("DUPLICATE_ID", f"reference action id {ref.id!r} appears twice", category=category.id, reference=ref.id)
        ref_ids.add(ref.id)
        for c in model.criteria:
            if c.id not in ref.performances:
                report.add(
                    "MISSING_VALUE",
                    f"reference action {ref.id!r} has no value for criterion {c.id!r}",
                    category=category.id,
                    reference=ref.id,
                    criterion=c.id,
                )
            elif not check_in_scale(c, ref.performances[c.id]):
                report.add(
                    "BAD_VALUE",
                    f"reference action {ref.id!r} is out of scale on criterion {c.id!r}",
                    category=category.id,
                    reference=ref.id,
                    criterion=c.id,
                )
        for cid in ref.performances:
            if cid not in known:
                report.add(
                    "UNKNOWN_CRITERION",
                    f"reference action {ref.id!r} scores unknown criterion {cid!r}",
                    category=category.id,
                    reference=ref.id,
                    criterion=cid,
                )
    for c in model.criteria:
        w = category.weights.get(c.id)
        if w is None:
            report.add(
                "MISSING_WEIGHT",
                f"category {category.id!r} has no weight for criterion {c.id!r}",
                category=category.id,
                criterion=c.id,
            )
        elif not w > 0:
            report.add(
                "BAD_WEIGHT",
                f"weights must be strictly positive, got {w} for criterion {c.id!r}",
                category=category.id,
                criterion=c.id,
            )
    for cid in category.weights:
        if cid not in known:
            report.add(
                "UNKNOWN_CRITERION",
                f"category {category.id!r} weighs unknown criterion {cid!r}",
                category=category.id,
                criterion=cid,
            )
    if not 0.5 <= category.likeness_threshold <= 1.0:
        report.add(
            "THRESHOLD_OUT_OF_RANGE",
            f"likeness threshold must lie in [0.5, 1], got {category.likeness_threshold}",
            category=category.id,
        )
    _check_interactions(category, known, report)
    try:
        for cid, slack in check_non_negativity(category, model.criteria):
            report.add(
                "NON_NEGATIVITY_VIOLATION",
                f"weight of criterion {cid!r} in category {category.id!r} cannot absorb "
                f"its negative interactions (slack {slack})",
                category=category.id,
                criterion=cid,
                slack=slack,
            )
    except CatsdError:
        pass  # the underlying defect was already reported above


def validate_model(model: DecisionModel) -> ValidationReport:
    """Collect every invariant violation in the model; never raises."""
    report = ValidationReport()
    _check_criteria(model, report)
    _check_bindings(model, report)
    seen = set()
    for category in model.categories:
        if category.id in seen:
            report.add("DUPLICATE_ID", f"category id {category.id!r} appears twice", category=category.id)
        seen.add(category.id)
        _check_category(category, model, report)
    return report


def validate_performance_table(table: PerformanceTable, criteria: list) -> ValidationReport:
    """Check that every row covers every criterion with an in-scale value."""
    report = ValidationReport()
    known = {c.id for c in criteria}
    for action_id, row in table.rows.items():
        for c in criteria:
            if c.id not in row:
                report.add(
                    "MISSING_VALUE",
                    f"action {action_id!r} has no value for criterion {c.id!r}",
                    action=action_id,
                    criterion=c.id,
                )
            elif not check_in_scale(c, row[c.id]):
                report.add(
                    "BAD_VALUE",
                    f"action {action_id!r} is out of scale on criterion {c.id!r}",
                    action=action_id,
                    criterion=c.id,
                )
        for cid in row:
            if cid not in known:
                report.add(
                    "UNKNOWN_CRITERION",
                    f"action {action_id!r} scores unknown criterion {cid!r}",
                    action=action_id,
                    criterion=cid,
                )
    return report
