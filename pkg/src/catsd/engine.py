"""Classification core: per-criterion comparisons, comprehensive
similarity and dissimilarity, likeness degrees, and the threshold-based
assignment procedure.

Every comparison of an action against a reference action produces a full
trace (per-criterion differences and function values plus the aggregate
figures). Traces are always kept; audit output is part of the product,
not a debug extra.
"""

from dataclasses import dataclass, field

from .errors import CatsdError
from .model import (
    CategoryModel,
    Criterion,
    DecisionModel,
    Direction,
    InteractionKind,
    PerformanceTable,
)
from .sdfunc import TOLERANCE, eval_sd


@dataclass(frozen=True)
class CriterionComparison:
    delta: float
    f: float
    s: float
    d: float


@dataclass
class ComparisonTrace:
    action_id: str
    reference_id: str
    criteria: dict
    similarity: float
    normalizer: float
    dissimilarity: float
    likeness: float

    def to_dict(self) -> dict:
        return {
            "action": self.action_id,
            "reference": self.reference_id,
            "criteria": {
                cid: {"delta": c.delta, "f": c.f, "s": c.s, "d": c.d}
                for cid, c in self.criteria.items()
            },
            "similarity": self.similarity,
            "normalizer": self.normalizer,
            "dissimilarity": self.dissimilarity,
            "likeness": self.likeness,
        }


@dataclass
class CategoryOutcome:
    category_id: str
    likeness: float
    best_reference: str
    accepted: bool
    traces: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "category": self.category_id,
            "likeness": self.likeness,
            "best_reference": self.best_reference,
            "accepted": self.accepted,
            "traces": [t.to_dict() for t in self.traces],
        }


@dataclass
class ActionAssignment:
    action_id: str
    outcomes: list
    accepted: list
    dummy: bool

    def outcome(self, category_id: str) -> CategoryOutcome:
        for o in self.outcomes:
            if o.category_id == category_id:
                return o
        raise KeyError(category_id)

    def to_dict(self) -> dict:
        return {
            "action": self.action_id,
            "accepted": list(self.accepted),
            "dummy": self.dummy,
            "outcomes": [o.to_dict() for o in self.outcomes],
        }


@dataclass
class AssignmentReport:
    assignments: list
    categories: list
    dummy_category_name: str

    def assignment(self, action_id: str) -> ActionAssignment:
        for a in self.assignments:
            if a.action_id == action_id:
                return a
        raise KeyError(action_id)

    def to_dict(self) -> dict:
        return {
            "categories": list(self.categories),
            "dummy_category_name": self.dummy_category_name,
            "assignments": [a.to_dict() for a in self.assignments],
        }


# ------------------------------------------------------------ calculations

def delta_j(criterion: Criterion, a_val, b_val) -> float:
    """Signed performance difference, positive when `a` beats `b`."""
    raw = float(a_val) - float(b_val)
    if criterion.direction is Direction.MINIMIZE:
        return -raw
    return raw


def comprehensive_similarity(s_values: dict, d_values: dict, category: CategoryModel) -> tuple:
    """Weighted similarity with pairwise interaction corrections.

    Both the numerator and the normalizer carry the interaction terms, so
    the normalizer depends on the compared pair. Returns (sH, KH).
    """
    num = 0.0
    den = 0.0
    for cid, s in s_values.items():
        try:
            w = category.weights[cid]
        except KeyError:
            raise CatsdError(
                "MISSING_WEIGHT",
                f"category {category.id!r} has no weight for criterion {cid!r}",
                category=category.id,
                criterion=cid,
            ) from None
        num += w * s
        den += w
    for coeff in category.interactions:
        if coeff.kind is InteractionKind.ANTAGONISTIC:
            term = s_values[coeff.first] * abs(d_values[coeff.second]) * coeff.value
        else:
            term = s_values[coeff.first] * s_values[coeff.second] * coeff.value
        num += term
        den += term
    if den <= TOLERANCE:
        raise CatsdError(
            "DEGENERATE_NORMALIZER",
            f"similarity normalizer collapsed to {den} in category {category.id!r}",
            category=category.id,
            normalizer=den,
        )
    return num / den, den


def comprehensive_dissimilarity(d_values) -> float:
    """Product aggregation: one full veto absorbs everything."""
    out = 1.0
    for d in d_values:
        out *= 1.0 + d
    return out - 1.0


def likeness(similarity: float, dissimilarity: float) -> float:
    return similarity * (1.0 + dissimilarity)


def compare(action_id: str, row: dict, reference, category: CategoryModel, model: DecisionModel) -> ComparisonTrace:
    """Trace one action against one reference action of one category."""
    per_criterion = {}
    s_values = {}
    d_values = {}
    for criterion in model.criteria:
        diff = delta_j(criterion, row[criterion.id], reference.performances[criterion.id])
        value = eval_sd(model.sd_functions[criterion.id], diff)
        s = max(value, 0.0)
        d = min(value, 0.0)
        per_criterion[criterion.id] = CriterionComparison(diff, value, s, d)
        s_values[criterion.id] = s
        d_values[criterion.id] = d
    similarity_value, normalizer = comprehensive_similarity(s_values, d_values, category)
    dissimilarity_value = comprehensive_dissimilarity(d_values.values())
    return ComparisonTrace(
        action_id=action_id,
        reference_id=reference.id,
        criteria=per_criterion,
        similarity=similarity_value,
        normalizer=normalizer,
        dissimilarity=dissimilarity_value,
        likeness=likeness(similarity_value, dissimilarity_value),
    )


# acceptance compares on 12 decimals so a platform's last-bit wobble
# cannot flip a boundary case like delta == lambda
ACCEPT_DECIMALS = 12


def accepts(delta_value: float, threshold: float, epsilon: float = 0.0) -> bool:
    return round(delta_value, ACCEPT_DECIMALS) >= threshold - epsilon


def classify(actions, performances: PerformanceTable, model: DecisionModel, epsilon: float = 0.0) -> AssignmentReport:
    """Assign every action to the categories it is alike enough to.

    Actions whose likeness reaches no category's threshold land in the
    dummy category. Output order follows input order; per-category
    likeness is the maximum over that category's reference actions (the
    first maximizing reference is reported).
    """
    assignments = []
    for action in actions:
        action_id = getattr(action, "id", action)
        try:
            row = performances.rows[action_id]
        except KeyError:
            raise CatsdError(
                "MISSING_VALUE",
                f"no performance row for action {action_id!r}",
                action=action_id,
            ) from None
        outcomes = []
        accepted = []
        for category in model.categories:
            traces = [
                compare(action_id, row, reference, category, model)
                for reference in category.reference_actions
            ]
            best = traces[0]
            for t in traces[1:]:
                if t.likeness > best.likeness:
                    best = t
            ok = accepts(best.likeness, category.likeness_threshold, epsilon)
            outcomes.append(
                CategoryOutcome(
                    category_id=category.id,
                    likeness=best.likeness,
                    best_reference=best.reference_id,
                    accepted=ok,
                    traces=traces,
                )
            )
            if ok:
                accepted.append(category.id)
        assignments.append(
            ActionAssignment(
                action_id=action_id,
                outcomes=outcomes,
                accepted=accepted,
                dummy=not accepted,
            )
        )
    return AssignmentReport(
        assignments=assignments,
        categories=[c.id for c in model.categories],
        dummy_category_name=model.dummy_category_name,
    )


def format_trace(trace: ComparisonTrace) -> str:
    """Multi-line rendering of one comparison, for diagnostics."""
    lines = [
        f"{trace.action_id} vs {trace.reference_id}:",
        "  criterion      delta          f          s          d",
    ]
    for cid, c in trace.criteria.items():
        lines.append(f"  {cid:<12} {c.delta:>8.4f} {c.f:>10.6f} {c.s:>10.6f} {c.d:>10.6f}")
    lines.append(
        f"  similarity={trace.similarity:.9f} normalizer={trace.normalizer:.9f} "
        f"dissimilarity={trace.dissimilarity:.9f} likeness={trace.likeness:.9f}"
    )
    return "\n".join(lines)
