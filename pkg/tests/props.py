"""Shared oracles and bulk property suites for the acceptance gate.

The oracles here are deliberately flat re-transcriptions of the method's
formulas, written with plain loops and none of the engine's data
structures, so that agreement between the two is evidence rather than
tautology. Each run_* function executes a full randomized suite and
returns the number of cases it checked.
"""

import random
from fractions import Fraction

from catsd.engine import classify
from catsd.model import (
    Action,
    Cardinal,
    CategoryModel,
    Criterion,
    DecisionModel,
    Direction,
    InteractionCoefficient,
    InteractionKind,
    PerformanceTable,
    ReferenceAction,
    validate_model,
)
from catsd.sdfunc import DeckRanking, deck_intensities, eval_sd, parse_sd_rows
from catsd.srf import WeightElicitation, srf_weights

TOLERANCE = 1e-9

# Published recruitment-study rankings: subsets from least to most
# important, with the number of blank cards after each subset.
COMMANDOS_RANKING = DeckRanking(
    [["PF"], ["NR", "SA", "MechR", "VP", "PmA"], ["Intel"], ["Pers", "Med"]],
    [1, 1, 0],
)
PARATROOPERS_RANKING = DeckRanking(
    [["Intel"], ["PF", "PmA"], ["NR", "SA", "MechR", "VP"], ["Pers"], ["Med"]],
    [1, 2, 2, 3],
)
SPECIAL_OPERATIONS_RANKING = DeckRanking(
    [["NR"], ["PF", "SA", "PmA"], ["Intel", "MechR", "VP"], ["Pers"], ["Med"]],
    [2, 1, 2, 1],
)
SNIPERS_RANKING = DeckRanking(
    [["PF"], ["VP"], ["NR", "SA", "MechR", "PmA"], ["Intel", "Pers", "Med"]],
    [0, 1, 1],
)

# Hand-checked membership matrix for the twenty candidates of the
# recruitment fixture (columns: Commandos, Paratroopers, Special
# Operations, Snipers).
EXPECTED_MEMBERSHIPS = {
    "a1": ["Commandos", "Paratroopers", "Special Operations"],
    "a2": ["Commandos", "Paratroopers", "Special Operations", "Snipers"],
    "a3": ["Paratroopers", "Special Operations"],
    "a4": ["Paratroopers"],
    "a5": ["Paratroopers"],
    "a6": ["Commandos", "Paratroopers", "Special Operations"],
    "a7": [],
    "a8": ["Commandos", "Paratroopers", "Special Operations", "Snipers"],
    "a9": ["Commandos", "Paratroopers", "Special Operations"],
    "a10": [],
    "a11": ["Commandos", "Special Operations"],
    "a12": ["Paratroopers"],
    "a13": ["Paratroopers"],
    "a14": ["Special Operations"],
    "a15": ["Commandos", "Special Operations"],
    "a16": ["Commandos", "Paratroopers", "Special Operations"],
    "a17": ["Paratroopers"],
    "a18": ["Paratroopers"],
    "a19": ["Paratroopers"],
    "a20": ["Commandos", "Paratroopers", "Special Operations", "Snipers"],
}


# ------------------------------------------------------------------ oracles

def classify_oracle(actions, performances, model, epsilon=0.0):
    """Assignment by direct transcription of the formulas.

    Returns {action id: [accepted category ids]} using nothing from the
    engine besides per-criterion SD evaluation.
    """
    out = {}
    for action in actions:
        row = performances.rows[action.id]
        accepted = []
        for category in model.categories:
            best = None
            for ref in category.reference_actions:
                s_part = {}
                d_part = {}
                for criterion in model.criteria:
                    gap = float(row[criterion.id]) - float(ref.performances[criterion.id])
                    if criterion.direction is Direction.MINIMIZE:
                        gap = -gap
                    value = eval_sd(model.sd_functions[criterion.id], gap)
                    s_part[criterion.id] = value if value > 0.0 else 0.0
                    d_part[criterion.id] = value if value < 0.0 else 0.0
                numerator = 0.0
                denominator = 0.0
                for cid, weight in category.weights.items():
                    numerator += weight * s_part[cid]
                    denominator += weight
                for coef in category.interactions:
                    if coef.kind is InteractionKind.ANTAGONISTIC:
                        term = s_part[coef.first] * abs(d_part[coef.second]) * coef.value
                    else:
                        term = s_part[coef.first] * s_part[coef.second] * coef.value
                    numerator += term
                    denominator += term
                product = 1.0
                for value in d_part.values():
                    product *= 1.0 + value
                degree = (numerator / denominator) * product
                if best is None or degree > best:
                    best = degree
            if round(best, 12) >= category.likeness_threshold - epsilon:
                accepted.append(category.id)
        out[action.id] = accepted
    return out


def srf_oracle(blanks, z):
    """Non-normalized subset weights, least to most important subset.

    w_k = 1 + (z - 1) * (position of subset k) / (position of the top),
    where consecutive subsets sit blanks+1 positions apart.
    """
    positions = [0]
    for blank in blanks:
        positions.append(positions[-1] + blank + 1)
    top = positions[-1]
    return [1 + (Fraction(z) - 1) * Fraction(p, top) for p in positions]


def deck_oracle(blanks, component):
    """Interior intensity ladder for one side of an SD function."""
    positions = [0]
    for blank in blanks:
        positions.append(positions[-1] + blank + 1)
    span = positions[-1]
    bases = [Fraction(p, span) for p in positions]
    if component == "f2":
        return bases
    if component == "f3":
        return [1 - b for b in bases]
    if component == "f1":
        return [b - 1 for b in bases]
    if component == "f4":
        return [-b for b in bases]
    raise ValueError(component)


# --------------------------------------------------------------- generators

def ramp(width, id="ramp"):
    return parse_sd_rows(
        [
            (f"d <= -{width}", "-1"),
            (f"-{width} < d <= 0", f"d/{width} + 1"),
            (f"0 < d <= {width}", f"-d/{width} + 1"),
            (f"d > {width}", "-1"),
        ],
        id=id,
    )


def random_model(rng: random.Random) -> DecisionModel:
    """A small valid model with optional interactions."""
    n = rng.randint(1, 3)
    criteria = [
        Criterion(f"c{i}", f"crit {i}", Direction.MAXIMIZE, Cardinal(0.0, 10.0))
        for i in range(n)
    ]
    sd = {c.id: ramp(rng.choice([5, 8, 10])) for c in criteria}
    categories = []
    for h in range(rng.randint(1, 2)):
        weights = {c.id: rng.uniform(0.5, 3.0) for c in criteria}
        interactions = []
        if n >= 2 and rng.random() < 0.7:
            first, second = rng.sample([c.id for c in criteria], 2)
            kind = rng.choice(list(InteractionKind))
            if kind is InteractionKind.MUTUAL_STRENGTHENING:
                interactions.append(InteractionCoefficient(kind, first, second, rng.uniform(0.1, 1.0)))
            else:
                cap = min(weights[first], weights[second]) * 0.8
                interactions.append(InteractionCoefficient(kind, first, second, -rng.uniform(0.05, cap)))
        refs = [
            ReferenceAction(f"b{h}{r}", {c.id: rng.uniform(0.0, 10.0) for c in criteria})
            for r in range(rng.randint(1, 2))
        ]
        categories.append(
            CategoryModel(
                id=f"cat{h}",
                name=f"cat{h}",
                reference_actions=refs,
                weights=weights,
                interactions=interactions,
                likeness_threshold=rng.uniform(0.5, 1.0),
            )
        )
    return DecisionModel(criteria=criteria, sd_functions=sd, categories=categories)


def random_rows(rng: random.Random, model: DecisionModel, count: int) -> dict:
    return {
        f"a{i}": {c.id: rng.uniform(0.0, 10.0) for c in model.criteria}
        for i in range(count)
    }


def _classified(model, rows, epsilon=0.0):
    actions = [Action(aid, aid) for aid in rows]
    return classify(actions, PerformanceTable(rows), model, epsilon=epsilon)


# ------------------------------------------------------------- bulk suites

def run_likeness_bounds(n=1000, seed=2001) -> int:
    rng = random.Random(seed)
    for _ in range(n):
        model = random_model(rng)
        report = _classified(model, random_rows(rng, model, 1))
        for assignment in report.assignments:
            for outcome in assignment.outcomes:
                assert -TOLERANCE <= outcome.likeness <= 1.0 + TOLERANCE
                for trace in outcome.traces:
                    assert -TOLERANCE <= trace.similarity <= 1.0 + TOLERANCE
                    assert -1.0 - TOLERANCE <= trace.dissimilarity <= TOLERANCE
    return n


def run_veto_forces_dummy(n=1000, seed=2002) -> int:
    rng = random.Random(seed)
    for _ in range(n):
        model = random_model(rng)
        vetoed = rng.choice(model.criteria).id
        # the action sits a full scale span below every reference on one
        # criterion, deep inside the totally dissimilar zone
        categories = []
        for category in model.categories:
            refs = [
                ReferenceAction(ref.id, {**ref.performances, vetoed: 10.0})
                for ref in category.reference_actions
            ]
            categories.append(
                CategoryModel(
                    id=category.id,
                    name=category.name,
                    reference_actions=refs,
                    weights=category.weights,
                    interactions=category.interactions,
                    likeness_threshold=category.likeness_threshold,
                )
            )
        model = DecisionModel(model.criteria, model.sd_functions, categories)
        rows = random_rows(rng, model, 1)
        for row in rows.values():
            row[vetoed] = 0.0
        report = _classified(model, rows)
        for assignment in report.assignments:
            assert assignment.dummy
            assert assignment.accepted == []
    return n


def run_interaction_free_mean(n=1000, seed=2003) -> int:
    from catsd.engine import comprehensive_similarity

    rng = random.Random(seed)
    for _ in range(n):
        ids = [f"c{i}" for i in range(rng.randint(1, 5))]
        weights = {cid: rng.uniform(0.1, 5.0) for cid in ids}
        s_values = {cid: rng.uniform(0.0, 1.0) for cid in ids}
        d_values = {cid: -rng.uniform(0.0, 1.0) for cid in ids}
        category = CategoryModel(
            id="c", name="c",
            reference_actions=[ReferenceAction("b", {})],
            weights=weights,
            likeness_threshold=0.5,
        )
        similarity, normalizer = comprehensive_similarity(s_values, d_values, category)
        mean = sum(weights[c] * s_values[c] for c in ids) / sum(weights.values())
        assert abs(similarity - mean) <= TOLERANCE
        assert abs(normalizer - sum(weights.values())) <= TOLERANCE
    return n


def run_rescaling_invariance(n=1000, seed=2004) -> int:
    rng = random.Random(seed)
    for _ in range(n):
        model = random_model(rng)
        rows = random_rows(rng, model, 2)
        target = rng.randrange(len(model.categories))
        factor = rng.uniform(0.1, 40.0)
        categories = []
        for index, category in enumerate(model.categories):
            if index != target:
                categories.append(category)
                continue
            categories.append(
                CategoryModel(
                    id=category.id,
                    name=category.name,
                    reference_actions=category.reference_actions,
                    weights={c: w * factor for c, w in category.weights.items()},
                    interactions=[
                        InteractionCoefficient(i.kind, i.first, i.second, i.value * factor)
                        for i in category.interactions
                    ],
                    likeness_threshold=category.likeness_threshold,
                )
            )
        scaled = DecisionModel(model.criteria, model.sd_functions, categories)
        before = _classified(model, rows)
        after = _classified(scaled, rows)
        for aid in rows:
            assert before.assignment(aid).accepted == after.assignment(aid).accepted
    return n


def run_lambda_monotonicity(n=1000, seed=2005) -> int:
    rng = random.Random(seed)
    for _ in range(n):
        model = random_model(rng)
        rows = random_rows(rng, model, 2)
        raised = DecisionModel(
            model.criteria,
            model.sd_functions,
            [
                CategoryModel(
                    id=c.id, name=c.name,
                    reference_actions=c.reference_actions,
                    weights=c.weights,
                    interactions=c.interactions,
                    likeness_threshold=min(1.0, c.likeness_threshold + rng.uniform(0.0, 0.5)),
                )
                for c in model.categories
            ],
        )
        before = _classified(model, rows)
        after = _classified(raised, rows)
        for aid in rows:
            assert set(after.assignment(aid).accepted) <= set(before.assignment(aid).accepted)
    return n


def run_classify_against_oracle(n=1000, seed=2006) -> int:
    rng = random.Random(seed)
    for _ in range(n):
        model = random_model(rng)
        assert validate_model(model).ok
        rows = random_rows(rng, model, rng.randint(1, 3))
        epsilon = rng.choice([0.0, 0.0, 0.05])
        actions = [Action(aid, aid) for aid in rows]
        report = classify(actions, PerformanceTable(rows), model, epsilon=epsilon)
        expected = classify_oracle(actions, PerformanceTable(rows), model, epsilon=epsilon)
        for aid in rows:
            assert report.assignment(aid).accepted == expected[aid], (aid, model)
    return n


def run_srf_against_oracle() -> int:
    """Exhaustive sweep of small rankings; every weight must match."""
    cases = 0
    for r in (2, 3, 4):
        blank_grids = [[]]
        for _ in range(r - 1):
            blank_grids = [g + [b] for g in blank_grids for b in (0, 1, 2, 3)]
        for blanks in blank_grids:
            for z in range(2, 14):
                ranking = DeckRanking([[f"c{k}"] for k in range(r)], blanks)
                weights = srf_weights(WeightElicitation(ranking, z))
                expected = srf_oracle(blanks, z)
                for k in range(r):
                    assert weights[f"c{k}"] == expected[k]
                cases += 1
    return cases


def run_deck_against_oracle(n=1000, seed=2007) -> int:
    rng = random.Random(seed)
    for _ in range(n):
        r = rng.randint(2, 6)
        blanks = [rng.randint(0, 4) for _ in range(r - 1)]
        component = rng.choice(["f1", "f2", "f3", "f4"])
        ranking = DeckRanking([[f"c{k}"] for k in range(r)], blanks)
        values = deck_intensities(ranking, component)
        expected = deck_oracle(blanks, component)
        for k in range(r):
            assert values[k] == expected[k]
    return n
