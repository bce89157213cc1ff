"""Project bundles and file formats.

A bundle is a flat directory or zip holding eight data modules plus a
manifest. Every module exists as a CSV schema with a 1:1 JSON mirror
(a list of row objects) selected by file extension. Reading collects
diagnostics into a ValidationReport instead of aborting; writing is
canonical, so export, import, and re-export reproduce identical bytes.
"""

import csv
import io
import json
import os
import tempfile
import zipfile
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import CatsdError
from .model import (
    Action,
    Cardinal,
    CategoryModel,
    Criterion,
    DecisionModel,
    Direction,
    InteractionCoefficient,
    InteractionKind,
    Ordinal,
    PerformanceTable,
    ReferenceAction,
    ValidationReport,
    validate_model,
    validate_performance_table,
)
from .sdfunc import DeckRanking, SDFunction, fit_affine_threshold, format_sd_rows, parse_sd_rows

MODULE_NAMES = (
    "criteria",
    "actions",
    "performance",
    "reference_actions",
    "sd_functions",
    "weights",
    "interactions",
    "thresholds",
)
MANIFEST_NAME = "manifest.json"
FORMAT_VERSION = 1
DEFAULT_DUMMY_NAME = "Non-assigned"


@dataclass
class LoadedProject:
    model: DecisionModel | None
    actions: list
    performances: PerformanceTable
    report: ValidationReport
    extras: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.model is not None and self.report.ok


# --------------------------------------------------------------- raw files

def _read_source(path) -> dict:
    path = os.fspath(path)
    if os.path.isdir(path):
        out = {}
        for name in sorted(os.listdir(path)):
            full = os.path.join(path, name)
            if os.path.isfile(full):
                with open(full, "rb") as fh:
                    out[name] = fh.read()
        return out
    if zipfile.is_zipfile(path):
        out = {}
        with zipfile.ZipFile(path) as zf:
            for info in zf.infolist():
                if not info.is_dir():
                    out[os.path.basename(info.filename)] = zf.read(info)
        return out
    raise CatsdError("MISSING_FILE", f"no bundle directory or zip at {path!r}", path=path)


def _atomic_write(path: str, data: bytes) -> None:
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _write_target(path, files: dict) -> None:
    path = os.fspath(path)
    if path.endswith(".zip"):
        buffer = io.BytesIO()
        with zipfile.ZipFile(buffer, "w", zipfile.ZIP_DEFLATED) as zf:
            for name in sorted(files):
                zf.writestr(zipfile.ZipInfo(name), files[name])
        _atomic_write(path, buffer.getvalue())
        return
    os.makedirs(path, exist_ok=True)
    for name, data in files.items():
        _atomic_write(os.path.join(path, name), data)


# ------------------------------------------------------------- rows <-> text

def _rows_from_bytes(name: str, data: bytes, report: ValidationReport):
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError:
        report.add("BAD_FORMAT", f"{name} is not UTF-8", file=name)
        return None
    if name.endswith(".json"):
        try:
            rows = json.loads(text)
        except json.JSONDecodeError as err:
            report.add("BAD_FORMAT", f"{name}: {err}", file=name)
            return None
        if not isinstance(rows, list) or not all(isinstance(r, dict) for r in rows):
            report.add("BAD_FORMAT", f"{name} must hold a list of row objects", file=name)
            return None
        return rows
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None:
        return []
    rows = []
    for row in reader:
        row.pop(None, None)
        rows.append(row)
    return rows


def _columns(rows: list) -> set:
    out = set()
    for row in rows:
        out.update(row.keys())
    return out


def _require_columns(name: str, rows: list, required, report: ValidationReport) -> bool:
    if not rows:
        return True
    present = _columns(rows)
    ok = True
    for column in required:
        if column not in present:
            report.add("MISSING_COLUMN", f"{name} lacks column {column!r}", file=name, column=column)
            ok = False
    return ok


def _cell(row: dict, column: str):
    value = row.get(column)
    if isinstance(value, str):
        value = value.strip()
        return value if value else None
    return value


def _number(value, integer: bool = False):
    """Parse a numeric cell; raises ValueError on anything else."""
    if isinstance(value, bool) or value is None:
        raise ValueError(f"not a number: {value!r}")
    if isinstance(value, str):
        value = float(Fraction(value)) if "/" in value else float(value)
    if isinstance(value, Fraction):
        value = float(value)
    if not isinstance(value, (int, float)):
        raise ValueError(f"not a number: {value!r}")
    if integer:
        if not float(value).is_integer():
            raise ValueError(f"not an integer: {value!r}")
        return int(value)
    return float(value)


def _fmt(value) -> str:
    if isinstance(value, Fraction):
        value = float(value)
    if isinstance(value, bool):
        raise TypeError("booleans do not belong in data files")
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if value.is_integer() and abs(value) < 1e16:
            return str(int(value))
        return repr(value)
    return str(value)


def _csv_bytes(columns: list, rows: list) -> bytes:
    buffer = io.StringIO()
    writer = csv.writer(buffer)
    writer.writerow(columns)
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue().encode("utf-8")


# ----------------------------------------------------------- module parsing

def _parse_criteria(name, rows, report):
    if not _require_columns(name, rows, ("id", "name", "direction", "scale_type", "sd_function"), report):
        return [], {}
    criteria = []
    bindings = {}
    for line, row in enumerate(rows, start=2):
        where = {"file": name, "row": line}
        cid = _cell(row, "id")
        if not cid:
            report.add("BAD_VALUE", "criterion row without id", **where)
            continue
        direction_text = _cell(row, "direction")
        try:
            direction = Direction(direction_text)
        except ValueError:
            report.add("BAD_VALUE", f"unknown direction {direction_text!r}", **where, criterion=cid)
            continue
        scale_type = _cell(row, "scale_type")
        try:
            if scale_type == "Cardinal":
                scale = Cardinal(_number(_cell(row, "min")), _number(_cell(row, "max")))
            elif scale_type == "Ordinal":
                scale = Ordinal(_number(_cell(row, "num_levels"), integer=True))
            else:
                report.add("BAD_VALUE", f"unknown scale type {scale_type!r}", **where, criterion=cid)
                continue
        except ValueError as err:
            report.add("BAD_VALUE", f"bad scale bounds for {cid!r}: {err}", **where, criterion=cid)
            continue
        criteria.append(
            Criterion(
                id=cid,
                name=_cell(row, "name") or cid,
                direction=direction,
                scale=scale,
                description=_cell(row, "description") or "",
            )
        )
        binding = _cell(row, "sd_function")
        if binding:
            bindings[cid] = binding
        else:
            report.add("MISSING_SD_FUNCTION", f"criterion {cid!r} names no SD function", **where, criterion=cid)
    return criteria, bindings


def _parse_actions(name, rows, report):
    if not _require_columns(name, rows, ("id",), report):
        return []
    actions = []
    for line, row in enumerate(rows, start=2):
        aid = _cell(row, "id")
        if not aid:
            report.add("BAD_VALUE", "action row without id", file=name, row=line)
            continue
        actions.append(Action(aid, _cell(row, "name") or aid, _cell(row, "description") or ""))
    return actions


def _parse_sd_functions(name, rows, report):
    if not _require_columns(name, rows, ("function_id", "condition", "value"), report):
        return {}
    grouped: dict = {}
    for line, row in enumerate(rows, start=2):
        fid = _cell(row, "function_id")
        if not fid:
            report.add("BAD_VALUE", "SD row without function_id", file=name, row=line)
            continue
        grouped.setdefault(fid, []).append((_cell(row, "condition") or "", str(_cell(row, "value") or "")))
    functions = {}
    for fid, body in grouped.items():
        try:
            functions[fid] = parse_sd_rows(body, id=fid)
        except CatsdError as err:
            report.add(err.code, f"SD function {fid!r}: {err.args[0]}", file=name, function=fid, **err.context)
    return functions


def _parse_performance_values(row, criteria, where, report):
    values = {}
    for criterion in criteria:
        raw = _cell(row, criterion.id)
        if raw is None:
            report.add("MISSING_VALUE", f"no value for criterion {criterion.id!r}", **where, criterion=criterion.id)
            continue
        try:
            values[criterion.id] = _number(raw, integer=isinstance(criterion.scale, Ordinal))
        except ValueError:
            report.add("BAD_VALUE", f"unreadable value {raw!r} for criterion {criterion.id!r}", **where, criterion=criterion.id)
    return values


def _parse_performance(name, rows, criteria, actions, report):
    table = PerformanceTable({})
    if not rows:
        return table
    if not _require_columns(name, rows, ("action_id",), report):
        return table
    _require_columns(name, rows, [c.id for c in criteria], report)
    known = {a.id for a in actions}
    for line, row in enumerate(rows, start=2):
        where = {"file": name, "row": line}
        aid = _cell(row, "action_id")
        if not aid:
            report.add("BAD_VALUE", "performance row without action_id", **where)
            continue
        if aid not in known:
            report.add("UNKNOWN_REFERENCE", f"performance row for unknown action {aid!r}", **where, action=aid)
            continue
        if aid in table.rows:
            report.add("DUPLICATE_ID", f"two performance rows for action {aid!r}", **where, action=aid)
            continue
        table.rows[aid] = _parse_performance_values(row, criteria, where, report)
    return table


def _parse_reference_actions(name, rows, criteria, report):
    """Reference actions grouped by category, in order of first appearance."""
    grouped: dict = {}
    if rows and not _require_columns(name, rows, ("category", "ref_id"), report):
        return grouped
    if rows:
        _require_columns(name, rows, [c.id for c in criteria], report)
    seen = set()
    for line, row in enumerate(rows, start=2):
        where = {"file": name, "row": line}
        category = _cell(row, "category")
        rid = _cell(row, "ref_id")
        if not category or not rid:
            report.add("BAD_VALUE", "reference row needs category and ref_id", **where)
            continue
        if (category, rid) in seen:
            report.add("DUPLICATE_ID", f"reference {rid!r} listed twice for {category!r}", **where)
            continue
        seen.add((category, rid))
        values = _parse_performance_values(row, criteria, where, report)
        grouped.setdefault(category, []).append(ReferenceAction(rid, values))
    return grouped


def _parse_weights(name, rows, criteria, report):
    grouped: dict = {}
    if rows and not _require_columns(name, rows, ("category",), report):
        return grouped
    if rows:
        _require_columns(name, rows, [c.id for c in criteria], report)
    for line, row in enumerate(rows, start=2):
        where = {"file": name, "row": line}
        category = _cell(row, "category")
        if not category:
            report.add("BAD_VALUE", "weights row without category", **where)
            continue
        if category in grouped:
            report.add("DUPLICATE_ID", f"two weight rows for category {category!r}", **where)
            continue
        weights = {}
        for criterion in criteria:
            raw = _cell(row, criterion.id)
            if raw is None:
                report.add("MISSING_WEIGHT", f"no weight for criterion {criterion.id!r}", **where, criterion=criterion.id)
                continue
            try:
                weights[criterion.id] = _number(raw)
            except ValueError:
                report.add("BAD_VALUE", f"unreadable weight {raw!r}", **where, criterion=criterion.id)
        grouped[category] = weights
    return grouped


def _parse_interactions(name, rows, report):
    grouped: dict = {}
    if rows and not _require_columns(name, rows, ("category", "kind", "first", "second", "value"), report):
        return grouped
    for line, row in enumerate(rows, start=2):
        where = {"file": name, "row": line}
        category = _cell(row, "category")
        if not category:
            report.add("BAD_VALUE", "interaction row without category", **where)
            continue
        kind_text = _cell(row, "kind")
        try:
            kind = InteractionKind(kind_text)
        except ValueError:
            report.add("BAD_VALUE", f"unknown interaction kind {kind_text!r}", **where)
            continue
        try:
            value = _number(_cell(row, "value"))
        except ValueError:
            report.add("BAD_VALUE", f"unreadable interaction value", **where)
            continue
        grouped.setdefault(category, []).append(
            InteractionCoefficient(kind, _cell(row, "first") or "", _cell(row, "second") or "", value)
        )
    return grouped


def _parse_thresholds(name, rows, report):
    grouped: dict = {}
    if rows and not _require_columns(name, rows, ("category", "value"), report):
        return grouped
    for line, row in enumerate(rows, start=2):
        where = {"file": name, "row": line}
        category = _cell(row, "category")
        if not category:
            report.add("BAD_VALUE", "threshold row without category", **where)
            continue
        if category in grouped:
            report.add("DUPLICATE_ID", f"two thresholds for category {category!r}", **where)
            continue
        try:
            grouped[category] = _number(_cell(row, "value"))
        except ValueError:
            report.add("BAD_VALUE", "unreadable likeness threshold", **where)
    return grouped


# ----------------------------------------------------------------- manifest

def _load_manifest(files: dict, report: ValidationReport):
    module_files = {}
    dummy_name = DEFAULT_DUMMY_NAME
    listed = None
    if MANIFEST_NAME in files:
        try:
            manifest = json.loads(files[MANIFEST_NAME].decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError) as err:
            report.add("BAD_FORMAT", f"unreadable manifest: {err}", file=MANIFEST_NAME)
            manifest = {}
        version = manifest.get("format_version")
        if version != FORMAT_VERSION:
            report.add(
                "BAD_FORMAT",
                f"unsupported format version {version!r}",
                file=MANIFEST_NAME,
                format_version=version,
            )
        dummy_name = manifest.get("dummy_category_name", DEFAULT_DUMMY_NAME)
        listed = manifest.get("modules")
        if listed is not None and not isinstance(listed, list):
            report.add("BAD_FORMAT", "manifest modules must be a list", file=MANIFEST_NAME)
            listed = None
    if listed is not None:
        for filename in listed:
            if filename not in files:
                report.add("MISSING_FILE", f"manifest lists absent file {filename!r}", file=filename)
                continue
            stem = filename.rsplit(".", 1)[0]
            if stem in MODULE_NAMES:
                module_files[stem] = filename
    for stem in MODULE_NAMES:
        if stem in module_files:
            continue
        for ext in (".csv", ".json"):
            if stem + ext in files:
                module_files[stem] = stem + ext
                break
        else:
            report.add("MISSING_FILE", f"bundle has no {stem} module", file=stem + ".csv")
    return module_files, dummy_name


# ------------------------------------------------------------------ reading

def read_model(path) -> LoadedProject:
    """Load a bundle directory or zip into a model, actions, and table.

    Problems become report issues with file and row context; the model is
    still assembled when enough of the bundle parses to build one.
    """
    report = ValidationReport()
    files = _read_source(path)
    module_files, dummy_name = _load_manifest(files, report)

    rows = {}
    for stem, filename in module_files.items():
        parsed = _rows_from_bytes(filename, files[filename], report)
        rows[stem] = parsed if parsed is not None else []

    criteria, bindings = _parse_criteria(module_files.get("criteria", "criteria.csv"), rows.get("criteria", []), report)
    functions = _parse_sd_functions(module_files.get("sd_functions", "sd_functions.csv"), rows.get("sd_functions", []), report)
    actions = _parse_actions(module_files.get("actions", "actions.csv"), rows.get("actions", []), report)
    performances = _parse_performance(
        module_files.get("performance", "performance.csv"), rows.get("performance", []), criteria, actions, report
    )
    references = _parse_reference_actions(
        module_files.get("reference_actions", "reference_actions.csv"), rows.get("reference_actions", []), criteria, report
    )
    weights = _parse_weights(module_files.get("weights", "weights.csv"), rows.get("weights", []), criteria, report)
    interactions = _parse_interactions(module_files.get("interactions", "interactions.csv"), rows.get("interactions", []), report)
    thresholds = _parse_thresholds(module_files.get("thresholds", "thresholds.csv"), rows.get("thresholds", []), report)

    sd_map = {}
    for cid, fid in bindings.items():
        if fid in functions:
            sd_map[cid] = functions[fid]
        else:
            report.add(
                "UNKNOWN_REFERENCE",
                f"criterion {cid!r} names undefined SD function {fid!r}",
                criterion=cid,
                function=fid,
            )

    categories = []
    order = []
    for source in (references, weights, thresholds, interactions):
        for category in source:
            if category not in order:
                order.append(category)
    for category in order:
        if category not in thresholds:
            report.add("MISSING_VALUE", f"category {category!r} has no likeness threshold", category=category)
        categories.append(
            CategoryModel(
                id=category,
                name=category,
                reference_actions=references.get(category, []),
                weights=weights.get(category, {}),
                interactions=interactions.get(category, []),
                likeness_threshold=thresholds.get(category, 0.5),
            )
        )

    model = None
    if criteria and categories:
        model = DecisionModel(
            criteria=criteria,
            sd_functions=sd_map,
            categories=categories,
            dummy_category_name=dummy_name,
        )
        report.issues.extend(validate_model(model).issues)
        report.issues.extend(validate_performance_table(performances, criteria).issues)
        for action in actions:
            if action.id not in performances.rows:
                report.add("MISSING_VALUE", f"action {action.id!r} has no performance row", action=action.id)
    elif not report.issues:
        report.add("MISSING_FILE", "bundle holds no usable model data")

    extras = {
        name: data
        for name, data in files.items()
        if name != MANIFEST_NAME and name not in set(module_files.values())
    }
    return LoadedProject(model, actions, performances, report, extras)


# ------------------------------------------------------------------ writing

def _criteria_rows(model: DecisionModel):
    rows = []
    for c in model.criteria:
        cardinal = isinstance(c.scale, Cardinal)
        binding = model.sd_functions.get(c.id)
        rows.append(
            [
                c.id,
                c.name,
                c.description,
                c.direction.value,
                "Cardinal" if cardinal else "Ordinal",
                _fmt(c.scale.min) if cardinal else "",
                _fmt(c.scale.max) if cardinal else "",
                "" if cardinal else _fmt(c.scale.levels),
                binding.id if binding is not None else "",
            ]
        )
    return ["id", "name", "description", "direction", "scale_type", "min", "max", "num_levels", "sd_function"], rows


def _distinct_functions(model: DecisionModel):
    out = []
    seen = set()
    for c in model.criteria:
        f = model.sd_functions.get(c.id)
        if isinstance(f, SDFunction) and f.id not in seen:
            seen.add(f.id)
            out.append(f)
    return out


def bundle_files(model: DecisionModel, actions, performances: PerformanceTable, extras: dict | None = None) -> dict:
    """Canonical byte content for every bundle file."""
    criteria = model.criteria
    files = {}

    columns, rows = _criteria_rows(model)
    files["criteria.csv"] = _csv_bytes(columns, rows)

    files["actions.csv"] = _csv_bytes(
        ["id", "name", "description"], [[a.id, a.name, a.description] for a in actions]
    )

    ordered_ids = [a.id for a in actions if a.id in performances.rows]
    ordered_ids += [aid for aid in performances.rows if aid not in set(ordered_ids)]
    files["performance.csv"] = _csv_bytes(
        ["action_id"] + [c.id for c in criteria],
        [[aid] + [_fmt(performances.rows[aid].get(c.id, "")) for c in criteria] for aid in ordered_ids],
    )

    files["reference_actions.csv"] = _csv_bytes(
        ["category", "ref_id"] + [c.id for c in criteria],
        [
            [cat.id, ref.id] + [_fmt(ref.performances.get(c.id, "")) for c in criteria]
            for cat in model.categories
            for ref in cat.reference_actions
        ],
    )

    files["sd_functions.csv"] = _csv_bytes(
        ["function_id", "condition", "value"],
        [[f.id, cond, value] for f in _distinct_functions(model) for cond, value in format_sd_rows(f)],
    )

    files["weights.csv"] = _csv_bytes(
        ["category"] + [c.id for c in criteria],
        [[cat.id] + [_fmt(cat.weights.get(c.id, "")) for c in criteria] for cat in model.categories],
    )

    files["interactions.csv"] = _csv_bytes(
        ["category", "kind", "first", "second", "value"],
        [
            [cat.id, coeff.kind.value, coeff.first, coeff.second, _fmt(coeff.value)]
            for cat in model.categories
            for coeff in cat.interactions
        ],
    )

    files["thresholds.csv"] = _csv_bytes(
        ["category", "value"],
        [[cat.id, _fmt(cat.likeness_threshold)] for cat in model.categories],
    )

    manifest = {
        "format_version": FORMAT_VERSION,
        "modules": [stem + ".csv" for stem in MODULE_NAMES],
        "dummy_category_name": model.dummy_category_name,
    }
    files[MANIFEST_NAME] = (json.dumps(manifest, indent=2) + "\n").encode("utf-8")

    for name, data in (extras or {}).items():
        if name not in files:
            files[name] = data
    return files


def write_bundle(path, model: DecisionModel, actions, performances: PerformanceTable, extras: dict | None = None) -> None:
    """Write a bundle to a directory, or to a zip when the path ends .zip."""
    _write_target(path, bundle_files(model, actions, performances, extras))


# ------------------------------------------------------------------ results

def _two_decimals(value: float) -> str:
    return f"{value:.2f}"


def results_files(report, detail: str = "summary") -> dict:
    """CSV content for an assignment report.

    The summary sheet is the action-by-category membership matrix with a
    trailing dummy column. Full detail adds the per-category maximum
    likeness table and the per-reference likeness table (two decimals).
    """
    if detail not in ("summary", "full"):
        raise ValueError(f"unknown detail level {detail!r}")
    files = {}
    header = ["action"] + list(report.categories) + [report.dummy_category_name]
    rows = []
    for assignment in report.assignments:
        accepted = set(assignment.accepted)
        rows.append(
            [assignment.action_id]
            + ["1" if cid in accepted else "" for cid in report.categories]
            + ["1" if assignment.dummy else ""]
        )
    files["assignments.csv"] = _csv_bytes(header, rows)
    if detail == "full":
        files["likeness.csv"] = _csv_bytes(
            ["action", "category", "likeness", "best_reference", "accepted"],
            [
                [a.action_id, o.category_id, repr(o.likeness), o.best_reference, "1" if o.accepted else ""]
                for a in report.assignments
                for o in a.outcomes
            ],
        )
        files["references.csv"] = _csv_bytes(
            ["action", "category", "reference", "likeness"],
            [
                [a.action_id, o.category_id, t.reference_id, _two_decimals(t.likeness)]
                for a in report.assignments
                for o in a.outcomes
                for t in o.traces
            ],
        )
    return files


def write_results(out_dir, report, detail: str = "summary") -> list:
    """Write result sheets into a directory; returns the paths written."""
    out_dir = os.fspath(out_dir)
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    for name, data in results_files(report, detail).items():
        full = os.path.join(out_dir, name)
        _atomic_write(full, data)
        paths.append(full)
    return paths


# ----------------------------------------------------- elicitation file I/O

def read_ranking(path) -> DeckRanking:
    """Deck ranking from a CSV or JSON file of ranked positions.

    Columns: position (1 = least important), criterion_ids (semicolon
    joined), blanks_after (blank cards before the next position; the top
    row leaves it empty or zero).
    """
    with open(path, "rb") as fh:
        data = fh.read()
    report = ValidationReport()
    rows = _rows_from_bytes(os.path.basename(os.fspath(path)), data, report)
    if rows is None or report.issues:
        first = report.issues[0] if report.issues else None
        raise CatsdError("BAD_FORMAT", first.message if first else "unreadable ranking file", path=os.fspath(path))
    return ranking_from_rows(rows)


def ranking_from_rows(rows: list) -> DeckRanking:
    if not rows:
        raise CatsdError("EMPTY_RANKING", "the ranking file holds no rows")
    required = ("position", "criterion_ids")
    for column in required:
        if any(column not in row for row in rows):
            raise CatsdError("MISSING_COLUMN", f"ranking rows need a {column!r} column", column=column)
    try:
        ordered = sorted(rows, key=lambda row: _number(_cell(row, "position"), integer=True))
    except ValueError as err:
        raise CatsdError("BAD_VALUE", f"unreadable position: {err}") from None
    positions = [_number(_cell(row, "position"), integer=True) for row in ordered]
    if len(set(positions)) != len(positions):
        raise CatsdError("BAD_VALUE", "duplicate ranking positions", positions=positions)
    subsets = []
    blanks = []
    for index, row in enumerate(ordered):
        ids = [part.strip() for part in str(_cell(row, "criterion_ids") or "").split(";") if part.strip()]
        subsets.append(ids)
        raw = _cell(row, "blanks_after")
        last = index == len(ordered) - 1
        if raw is None:
            count = 0
        else:
            try:
                count = _number(raw, integer=True)
            except ValueError:
                raise CatsdError("BAD_VALUE", f"unreadable blanks_after {raw!r}", row=index + 2) from None
        if last and count:
            raise CatsdError("BAD_VALUE", "blanks after the most important subset have no meaning", row=index + 2)
        if not last:
            blanks.append(count)
    return DeckRanking(subsets, blanks)


def read_threshold_points(path) -> dict:
    """Fit thresholds from anchor points in a CSV or JSON file.

    Columns: threshold (name), level, difference; exactly two rows per
    threshold name. Returns name -> fitted Constant or Affine.
    """
    with open(path, "rb") as fh:
        data = fh.read()
    report = ValidationReport()
    rows = _rows_from_bytes(os.path.basename(os.fspath(path)), data, report)
    if rows is None or report.issues:
        first = report.issues[0] if report.issues else None
        raise CatsdError("BAD_FORMAT", first.message if first else "unreadable points file", path=os.fspath(path))
    return thresholds_from_rows(rows)


def thresholds_from_rows(rows: list) -> dict:
    if not rows:
        raise CatsdError("BAD_VALUE", "the points file holds no rows")
    for column in ("threshold", "level", "difference"):
        if any(column not in row for row in rows):
            raise CatsdError("MISSING_COLUMN", f"points rows need a {column!r} column", column=column)
    grouped: dict = {}
    for line, row in enumerate(rows, start=2):
        name = _cell(row, "threshold")
        if not name:
            raise CatsdError("BAD_VALUE", "points row without threshold name", row=line)
        try:
            level = _number(_cell(row, "level"))
            difference = _number(_cell(row, "difference"))
        except ValueError as err:
            raise CatsdError("BAD_VALUE", f"unreadable point: {err}", row=line) from None
        grouped.setdefault(name, []).append((level, difference))
    out = {}
    for name, points in grouped.items():
        if len(points) != 2:
            raise CatsdError(
                "BAD_VALUE",
                f"threshold {name!r} needs exactly two anchor points, got {len(points)}",
                threshold=name,
            )
        (l1, d1), (l2, d2) = sorted(points)
        out[name] = fit_affine_threshold(l1, d1, l2, d2)
    return out
