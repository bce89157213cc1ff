"""HTTP workspace service.

Projects live as flat directories of bundle files under a data
directory; the API edits them module by module, runs classifications,
and answers stateless elicitation computations. Writes are guarded by an
integer version token (optimistic concurrency): every mutation must name
the version it saw, and a stale token gets 409 instead of silently
overwriting.

Error contract: 400 carries a ValidationReport body for malformed
payloads, 404 unknown ids, 409 stale tokens, 422 for projects that parse
but are semantically unusable (reported on execute).
"""

import datetime
import io
import json
import os
import threading
import uuid
import zipfile
from fractions import Fraction

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, Response

from .bundle import (
    FORMAT_VERSION,
    MANIFEST_NAME,
    MODULE_NAMES,
    _rows_from_bytes,
    ranking_from_rows,
    read_model,
    thresholds_from_rows,
)
from .engine import classify
from .errors import CatsdError
from .model import ValidationReport
from .sdfunc import Constant, DeckRanking, deck_intensities
from .srf import WeightElicitation, format_weight, srf_weights

META_NAME = "meta.json"
RESULTS_NAME = "results.json"
RESERVED = {META_NAME, RESULTS_NAME}


def _now() -> str:
    return datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")


def _fraction_text(value) -> str:
    frac = Fraction(value)
    return str(frac.numerator) if frac.denominator == 1 else f"{frac.numerator}/{frac.denominator}"


def _report_body(report: ValidationReport) -> dict:
    return report.to_dict()


def _error_report(code: str, message: str, **context) -> dict:
    report = ValidationReport()
    safe = {
        key: value if isinstance(value, (str, int, float, bool, type(None))) else str(value)
        for key, value in context.items()
    }
    report.add(code, message, **safe)
    return _report_body(report)


class ProjectStore:
    """Flat-file project storage with per-project write locks."""

    def __init__(self, root: str):
        self.root = os.fspath(root)
        os.makedirs(self.root, exist_ok=True)
        self._locks: dict = {}
        self._registry = threading.Lock()

    def lock(self, project_id: str) -> threading.Lock:
        with self._registry:
            if project_id not in self._locks:
                self._locks[project_id] = threading.Lock()
            return self._locks[project_id]

    def _dir(self, project_id: str) -> str:
        return os.path.join(self.root, project_id)

    def exists(self, project_id: str) -> bool:
        return os.path.isfile(os.path.join(self._dir(project_id), META_NAME))

    def ids(self) -> list:
        if not os.path.isdir(self.root):
            return []
        return sorted(
            name for name in os.listdir(self.root) if self.exists(name)
        )

    def meta(self, project_id: str) -> dict:
        with open(os.path.join(self._dir(project_id), META_NAME), encoding="utf-8") as fh:
            return json.load(fh)

    def write_meta(self, project_id: str, meta: dict) -> None:
        self._write(project_id, META_NAME, (json.dumps(meta, indent=2) + "\n").encode("utf-8"))

    def create(self, name: str, dummy_name: str = "Non-assigned") -> dict:
        project_id = uuid.uuid4().hex[:12]
        os.makedirs(self._dir(project_id), exist_ok=False)
        stamp = _now()
        meta = {
            "id": project_id,
            "name": name,
            "version": 1,
            "created_at": stamp,
            "updated_at": stamp,
            "dummy_category_name": dummy_name,
        }
        self.write_meta(project_id, meta)
        return meta

    def touch(self, project_id: str, bump: bool = True) -> dict:
        meta = self.meta(project_id)
        if bump:
            meta["version"] += 1
        meta["updated_at"] = _now()
        self.write_meta(project_id, meta)
        return meta

    def mark_executed(self, project_id: str) -> dict:
        # lets clients tell whether stored results predate later edits
        meta = self.meta(project_id)
        meta["executed_version"] = meta["version"]
        meta["updated_at"] = _now()
        self.write_meta(project_id, meta)
        return meta

    def delete(self, project_id: str) -> None:
        directory = self._dir(project_id)
        for name in os.listdir(directory):
            os.unlink(os.path.join(directory, name))
        os.rmdir(directory)

    def files(self, project_id: str) -> dict:
        """Bundle files only; bookkeeping files stay out."""
        directory = self._dir(project_id)
        out = {}
        for name in sorted(os.listdir(directory)):
            if name in RESERVED:
                continue
            with open(os.path.join(directory, name), "rb") as fh:
                out[name] = fh.read()
        return out

    def _write(self, project_id: str, name: str, data: bytes) -> None:
        directory = self._dir(project_id)
        tmp = os.path.join(directory, f".tmp-{name}")
        with open(tmp, "wb") as fh:
            fh.write(data)
        os.replace(tmp, os.path.join(directory, name))

    def put_module(self, project_id: str, stem: str, rows: list) -> None:
        """Store one module as its JSON mirror, replacing any CSV twin."""
        data = (json.dumps(rows, indent=2) + "\n").encode("utf-8")
        self._write(project_id, f"{stem}.json", data)
        csv_twin = os.path.join(self._dir(project_id), f"{stem}.csv")
        if os.path.exists(csv_twin):
            os.unlink(csv_twin)
        self._refresh_manifest(project_id)

    def put_raw(self, project_id: str, files: dict) -> None:
        for name, data in files.items():
            if name not in RESERVED:
                self._write(project_id, name, data)
        self._refresh_manifest(project_id)

    def _refresh_manifest(self, project_id: str) -> None:
        """Keep the manifest pointing at the module files actually present."""
        directory = self._dir(project_id)
        dummy = self.meta(project_id).get("dummy_category_name", "Non-assigned")
        manifest_path = os.path.join(directory, MANIFEST_NAME)
        if os.path.exists(manifest_path):
            with open(manifest_path, encoding="utf-8") as fh:
                try:
                    dummy = json.load(fh).get("dummy_category_name", dummy)
                except json.JSONDecodeError:
                    pass
        modules = []
        for stem in MODULE_NAMES:
            for ext in (".csv", ".json"):
                if os.path.exists(os.path.join(directory, stem + ext)):
                    modules.append(stem + ext)
                    break
        manifest = {
            "format_version": FORMAT_VERSION,
            "modules": modules,
            "dummy_category_name": dummy,
        }
        self._write(project_id, MANIFEST_NAME, (json.dumps(manifest, indent=2) + "\n").encode("utf-8"))

    def module_rows(self, project_id: str) -> dict:
        """Present modules as row lists, whatever the stored format."""
        report = ValidationReport()
        out = {}
        for name, data in self.files(project_id).items():
            stem, ext = os.path.splitext(name)
            if stem in MODULE_NAMES and ext in (".csv", ".json"):
                rows = _rows_from_bytes(name, data, report)
                out[stem] = rows if rows is not None else []
        return out

    def results(self, project_id: str):
        path = os.path.join(self._dir(project_id), RESULTS_NAME)
        if not os.path.exists(path):
            return None
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)

    def write_results(self, project_id: str, report: dict) -> None:
        self._write(
            project_id, RESULTS_NAME, (json.dumps(report, indent=2) + "\n").encode("utf-8")
        )


# --------------------------------------------------------------- app wiring

SYNTAX_CODES = {
    "BAD_FORMAT",
    "MISSING_COLUMN",
    "BAD_VALUE",
    "MISSING_VALUE",
    "DUPLICATE_ID",
    "PARSE_ERROR",
    "OVERLAPPING_PIECES",
    "COVERAGE_GAP",
    "VALUE_OUT_OF_RANGE",
    "NON_MONOTONE",
    "BAD_SCALE",
}


def _module_write_report(store: ProjectStore, project_id: str, stem: str, rows: list) -> ValidationReport:
    """Parse-level validation of one module against the stored criteria."""
    from . import bundle

    report = ValidationReport()
    name = f"{stem}.json"
    existing = store.module_rows(project_id)
    criteria, _ = bundle._parse_criteria("criteria.json", existing.get("criteria", []), ValidationReport())
    if stem == "criteria":
        bundle._parse_criteria(name, rows, report)
    elif stem == "actions":
        bundle._parse_actions(name, rows, report)
    elif stem == "sd_functions":
        bundle._parse_sd_functions(name, rows, report)
    elif stem == "performance":
        actions = bundle._parse_actions("actions.json", existing.get("actions", []), ValidationReport())
        bundle._parse_performance(name, rows, criteria, actions, report)
    elif stem == "reference_actions":
        bundle._parse_reference_actions(name, rows, criteria, report)
    elif stem == "weights":
        bundle._parse_weights(name, rows, criteria, report)
    elif stem == "interactions":
        bundle._parse_interactions(name, rows, report)
    elif stem == "thresholds":
        bundle._parse_thresholds(name, rows, report)
    report.issues = [i for i in report.issues if i.code in SYNTAX_CODES or i.code == "MISSING_WEIGHT"]
    return report


def create_app(data_dir: str = "./catsd-projects") -> FastAPI:
    app = FastAPI(title="catsd workspace", version="1.0", openapi_url="/spec")
    store = ProjectStore(data_dir)

    async def _json_body(request: Request):
        raw = await request.body()
        if not raw:
            return None, JSONResponse(_error_report("BAD_FORMAT", "empty request body"), status_code=400)
        try:
            return json.loads(raw), None
        except json.JSONDecodeError as err:
            return None, JSONResponse(_error_report("BAD_FORMAT", f"unreadable JSON: {err}"), status_code=400)

    def _not_found(project_id: str) -> JSONResponse:
        return JSONResponse({"detail": f"no project {project_id!r}"}, status_code=404)

    def _project_document(project_id: str) -> dict:
        meta = store.meta(project_id)
        document = dict(meta)
        document["modules"] = store.module_rows(project_id)
        results = store.results(project_id)
        if results is not None:
            document["last_results"] = results
        return document

    @app.post("/projects", status_code=201)
    async def create_project(request: Request):
        raw = await request.body()
        body = {}
        if raw:
            try:
                body = json.loads(raw)
            except json.JSONDecodeError as err:
                return JSONResponse(_error_report("BAD_FORMAT", f"unreadable JSON: {err}"), status_code=400)
        if not isinstance(body, dict):
            return JSONResponse(_error_report("BAD_FORMAT", "body must be an object"), status_code=400)
        name = body.get("name") or "Untitled project"
        dummy = body.get("dummy_category_name") or "Non-assigned"
        return store.create(str(name), str(dummy))

    @app.get("/projects")
    async def list_projects():
        return [store.meta(pid) for pid in store.ids()]

    @app.get("/projects/{project_id}")
    async def get_project(project_id: str):
        if not store.exists(project_id):
            return _not_found(project_id)
        return _project_document(project_id)

    @app.delete("/projects/{project_id}", status_code=204)
    async def delete_project(project_id: str):
        if not store.exists(project_id):
            return _not_found(project_id)
        with store.lock(project_id):
            store.delete(project_id)
        return Response(status_code=204)

    @app.post("/projects/{project_id}/duplicate", status_code=201)
    async def duplicate_project(project_id: str):
        if not store.exists(project_id):
            return _not_found(project_id)
        with store.lock(project_id):
            source_meta = store.meta(project_id)
            files = store.files(project_id)
        copy_meta = store.create(
            f"{source_meta['name']} (copy)",
            source_meta.get("dummy_category_name", "Non-assigned"),
        )
        with store.lock(copy_meta["id"]):
            store.put_raw(copy_meta["id"], files)
        return store.meta(copy_meta["id"])

    @app.put("/projects/{project_id}/modules/{module}")
    async def put_module(project_id: str, module: str, request: Request, version: int | None = None):
        if not store.exists(project_id):
            return _not_found(project_id)
        if module not in MODULE_NAMES:
            return JSONResponse({"detail": f"no module {module!r}"}, status_code=404)
        body, error = await _json_body(request)
        if error is not None:
            return error
        if not isinstance(body, list) or not all(isinstance(r, dict) for r in body):
            return JSONResponse(
                _error_report("BAD_FORMAT", "a module payload is a list of row objects"),
                status_code=400,
            )
        if version is None:
            return JSONResponse(
                _error_report("BAD_FORMAT", "pass the version token seen by the editor (?version=N)"),
                status_code=400,
            )
        with store.lock(project_id):
            meta = store.meta(project_id)
            if version != meta["version"]:
                return JSONResponse(
                    {
                        "detail": "stale version token",
                        "given": version,
                        "current_version": meta["version"],
                    },
                    status_code=409,
                )
            report = _module_write_report(store, project_id, module, body)
            if not report.ok:
                return JSONResponse(_report_body(report), status_code=400)
            store.put_module(project_id, module, body)
            meta = store.touch(project_id)
        return meta

    @app.post("/projects/{project_id}/execute")
    async def execute(project_id: str, request: Request):
        if not store.exists(project_id):
            return _not_found(project_id)
        raw = await request.body()
        epsilon = 0.0
        if raw:
            try:
                body = json.loads(raw)
                epsilon = float(body.get("epsilon", 0.0)) if isinstance(body, dict) else 0.0
            except (json.JSONDecodeError, TypeError, ValueError):
                return JSONResponse(_error_report("BAD_FORMAT", "unreadable execute options"), status_code=400)
        with store.lock(project_id):
            directory = store._dir(project_id)
        project = read_model(directory)
        if not project.ok:
            return JSONResponse(_report_body(project.report), status_code=422)
        try:
            report = classify(project.actions, project.performances, project.model, epsilon=epsilon)
        except CatsdError as err:
            return JSONResponse(_error_report(err.code, str(err.args[0]), **err.context), status_code=422)
        payload = report.to_dict()
        with store.lock(project_id):
            if store.exists(project_id):
                store.write_results(project_id, payload)
                store.mark_executed(project_id)
        return payload

    @app.get("/projects/{project_id}/export")
    async def export_project(project_id: str):
        if not store.exists(project_id):
            return _not_found(project_id)
        with store.lock(project_id):
            files = store.files(project_id)
        buffer = io.BytesIO()
        with zipfile.ZipFile(buffer, "w", zipfile.ZIP_DEFLATED) as zf:
            for name in sorted(files):
                zf.writestr(zipfile.ZipInfo(name), files[name])
        headers = {"Content-Disposition": f'attachment; filename="{project_id}.zip"'}
        return Response(buffer.getvalue(), media_type="application/zip", headers=headers)

    @app.post("/projects/import", status_code=201)
    async def import_project(request: Request):
        raw = await request.body()
        if not raw:
            return JSONResponse(_error_report("BAD_FORMAT", "empty import body"), status_code=400)
        try:
            archive = zipfile.ZipFile(io.BytesIO(raw))
        except zipfile.BadZipFile:
            return JSONResponse(_error_report("BAD_FORMAT", "the import body is not a zip archive"), status_code=400)
        files = {}
        for info in archive.infolist():
            if not info.is_dir():
                files[os.path.basename(info.filename)] = archive.read(info)
        dummy = "Non-assigned"
        if MANIFEST_NAME in files:
            try:
                dummy = json.loads(files[MANIFEST_NAME].decode("utf-8")).get("dummy_category_name", dummy)
            except (UnicodeDecodeError, json.JSONDecodeError):
                pass
        name = request.query_params.get("name") or "Imported project"
        meta = store.create(name, dummy)
        with store.lock(meta["id"]):
            store.put_raw(meta["id"], files)
        project = read_model(store._dir(meta["id"]))
        document = dict(store.meta(meta["id"]))
        document["report"] = _report_body(project.report)
        return document

    # ------------------------------------------------ stateless computations

    @app.post("/compute/srf-weights")
    async def compute_srf_weights(request: Request):
        body, error = await _json_body(request)
        if error is not None:
            return error
        if not isinstance(body, dict) or "z" not in body:
            return JSONResponse(_error_report("BAD_FORMAT", "expected subsets, blanks, and z"), status_code=400)
        try:
            if "rows" in body:
                ranking = ranking_from_rows(body["rows"])
            else:
                ranking = DeckRanking(list(body.get("subsets", [])), list(body.get("blanks", [])))
            weights = srf_weights(WeightElicitation(ranking, body["z"]))
        except CatsdError as err:
            return JSONResponse(_error_report(err.code, str(err.args[0]), **err.context), status_code=422)
        except (TypeError, ValueError) as err:
            return JSONResponse(_error_report("BAD_FORMAT", str(err)), status_code=400)
        return {
            "order": list(weights),
            "weights": {cid: format_weight(w) for cid, w in weights.items()},
            "exact": {cid: _fraction_text(w) for cid, w in weights.items()},
        }

    @app.post("/compute/fit-thresholds")
    async def compute_fit_thresholds(request: Request):
        body, error = await _json_body(request)
        if error is not None:
            return error
        if not isinstance(body, dict) or not isinstance(body.get("points"), list):
            return JSONResponse(_error_report("BAD_FORMAT", "expected a points list"), status_code=400)
        try:
            fits = thresholds_from_rows(body["points"])
        except CatsdError as err:
            return JSONResponse(_error_report(err.code, str(err.args[0]), **err.context), status_code=400)
        except ValueError as err:
            return JSONResponse(_error_report("BAD_VALUE", str(err)), status_code=422)
        out = {}
        for name, kind in fits.items():
            if isinstance(kind, Constant):
                out[name] = {"kind": "constant", "value": _fraction_text(kind.c)}
            else:
                out[name] = {
                    "kind": "affine",
                    "slope": _fraction_text(kind.slope),
                    "intercept": _fraction_text(kind.intercept),
                }
        return {"thresholds": out}

    @app.post("/compute/deck-intensities")
    async def compute_deck_intensities(request: Request):
        body, error = await _json_body(request)
        if error is not None:
            return error
        if not isinstance(body, dict) or "component" not in body:
            return JSONResponse(_error_report("BAD_FORMAT", "expected subsets, blanks, and component"), status_code=400)
        try:
            ranking = DeckRanking(list(body.get("subsets", [])), list(body.get("blanks", [])))
            intensities = deck_intensities(ranking, body["component"])
        except CatsdError as err:
            return JSONResponse(_error_report(err.code, str(err.args[0]), **err.context), status_code=422)
        except (TypeError, ValueError) as err:
            return JSONResponse(_error_report("BAD_FORMAT", str(err)), status_code=400)
        return {
            "intensities": {str(k): _fraction_text(v) for k, v in intensities.items()},
            "values": {str(k): float(v) for k, v in intensities.items()},
        }

    return app
