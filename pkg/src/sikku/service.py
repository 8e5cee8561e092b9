"""Stateless HTTP/JSON service exposing the engine to scripts and the
composer client.

Every handler is a pure function of the request payload; concurrent
requests are served by a threading server with no shared mutable state.
Counts cross the wire as decimal strings.  Client faults map to 4xx:
malformed bodies 400, cap overruns 413, inapplicable symmetry 422.
"""

from __future__ import annotations

import json
import mimetypes
import posixpath
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from .enumeration import (
    count_exact_symmetry,
    count_up_to_symmetry,
    count_with_symmetry,
    generate_with_symmetry,
    tile_multiset_of,
)
from .errors import (
    CapExceededError,
    FormatError,
    InapplicableSymmetryError,
    InvalidSizeError,
    SikkuError,
    SizeMismatchError,
    UnknownCellError,
)
from .feasibility import (
    Infeasible,
    compose_from_multiset,
    feasibility_report,
    min_tiles_to_specify,
    mirror_line_constraints,
    validate_partial,
)
from .fileio import (
    kolam_from_dict,
    kolam_to_dict,
    multiset_from_dict,
    placement_from_dict,
    template_from_dict,
)
from .render import RenderStyle, render_svg, style_with
from .strands import trace
from .symmetry import applicable_ops, group, stabilizer, template_group
from .template import Template

PAGE_CAP = 256
TOTAL_CAP = 1 << 20
MAX_BODY = 4 << 20


def _template_from_query(q: dict[str, list[str]]) -> Template:
    try:
        variant = q.get("variant", ["1r"])[0]
        k = int(q.get("k", [""])[0])
        l = int(q.get("l", [""])[0])
    except (ValueError, IndexError) as exc:
        raise FormatError("variant, k and l are required") from exc
    return template_from_dict({"variant": variant, "k": k, "l": l})


def _mirror_guides(template: Template) -> list[dict]:
    minx, miny, maxx, maxy = template.bounds
    cx, cy = template.center_q[0] / 4.0, template.center_q[1] / 4.0
    guides = []
    for op in applicable_ops(template):
        if not op.is_mirror:
            continue
        if op.name == "mk":
            line = [[cx, miny], [cx, maxy]]
            label = "m-k"
        elif op.name == "ml":
            line = [[minx, cy], [maxx, cy]]
            label = "m-l"
        elif op.name == "md1":
            half = min(maxx - cx, maxy - cy)
            line = [[cx - half, cy - half], [cx + half, cy + half]]
            label = "md"
        else:
            half = min(maxx - cx, maxy - cy)
            line = [[cx - half, cy + half], [cx + half, cy - half]]
            label = "md"
        guides.append({"op": op.name, "label": label, "line": line})
    return guides


def template_payload(template: Template) -> dict:
    cells = []
    for cell in template.cells:
        x, y = template.cell_center(cell)
        cells.append(
            {
                "id": cell.token(),
                "grid": cell.grid,
                "i": cell.i,
                "j": cell.j,
                "center": [x, y],
                "corners": [list(p) for p in template.tile_corners(cell)],
            }
        )
    edges = []
    for index, edge in enumerate(template.edges):
        edges.append(
            {
                "id": edge.token(),
                "index": index,
                "cells": [edge.cells[0].token(), edge.cells[1].token()],
                "dirs": [edge.dirs[0].value, edge.dirs[1].value],
                "midpoint": [edge.midpoint[0], edge.midpoint[1]],
            }
        )
    minx, miny, maxx, maxy = template.bounds
    return {
        "variant": template.variant.value,
        "k": template.k,
        "l": template.l,
        "cells": cells,
        "edges": edges,
        "bounds": [minx, miny, maxx, maxy],
        "center": [template.center_q[0] / 4.0, template.center_q[1] / 4.0],
        "side": template.side,
        "group": template_group(template).token(),
        "mirrors": _mirror_guides(template),
    }


def handle_count(q: dict) -> dict:
    template = _template_from_query(q)
    label = q.get("group", ["1"])[0]
    report = count_with_symmetry(template, label)
    return {
        "group": report.label,
        "es": report.es,
        "count": report.count_str,
        "no_kolam": report.no_kolam,
    }


def handle_count_exact(q: dict) -> dict:
    template = _template_from_query(q)
    label = q.get("group", ["1"])[0]
    return {"group": label, "count": str(count_exact_symmetry(template, label))}


def handle_count_orbits(q: dict) -> dict:
    template = _template_from_query(q)
    return {"count": str(count_up_to_symmetry(template))}


def handle_enumerate(q: dict) -> dict:
    template = _template_from_query(q)
    label = q.get("group", ["1"])[0]
    offset = int(q.get("offset", ["0"])[0])
    limit = int(q.get("limit", [str(PAGE_CAP)])[0])
    if limit > PAGE_CAP:
        raise CapExceededError(f"page limit {limit} exceeds cap {PAGE_CAP}")
    report = count_with_symmetry(template, label)
    if report.no_kolam:
        raise InapplicableSymmetryError(f"{label} yields no kolam on {template!r}")
    if report.count > TOTAL_CAP:
        raise CapExceededError(f"census of {report.count_str} exceeds cap {TOTAL_CAP}")
    kolams = generate_with_symmetry(template, label, offset=offset, limit=limit)
    return {
        "group": label,
        "es": report.es,
        "total": report.count_str,
        "offset": offset,
        "items": [
            {"index": offset + i, "crossings": k.bitstring, "stabilizer": stabilizer(k).token()}
            for i, k in enumerate(kolams)
        ],
    }


def handle_min_tiles(q: dict) -> dict:
    template = _template_from_query(q)
    label = q.get("group", ["1"])[0]
    return min_tiles_to_specify(template, label).to_dict()


def handle_mirror_constraints(q: dict) -> dict:
    template = _template_from_query(q)
    label = q.get("group", ["1"])[0]
    constraints = mirror_line_constraints(template, label)
    return {
        "cells": {
            cell.token(): [
                {"kind": p.kind.value, "rotation": p.rotation} for p in placements
            ]
            for cell, placements in sorted(constraints.items())
        }
    }


def handle_classify(body: dict) -> dict:
    kolam = kolam_from_dict(body)
    pg = stabilizer(kolam)
    return {"group": pg.token(), "diagonal": pg.diagonal, "order": pg.order}


def handle_trace(body: dict) -> dict:
    kolam = kolam_from_dict(body)
    result = trace(kolam)
    return {
        "loop_count": result.loop_count,
        "loops": [[p.token() for p in loop.ports] for loop in result.loops],
        "multiset": tile_multiset_of(kolam).to_dict(),
    }


def handle_feasibility(body: dict) -> dict:
    multiset = multiset_from_dict(body.get("multiset", {}))
    template = None
    if body.get("template"):
        template = template_from_dict(body["template"])
    return feasibility_report(multiset, template).to_dict()


def handle_compose(body: dict) -> dict:
    template = template_from_dict(body.get("template", {}))
    multiset = multiset_from_dict(body.get("multiset", {}))
    result = compose_from_multiset(template, multiset)
    if isinstance(result, Infeasible):
        return {"infeasible": result.to_dict()}
    return {"kolam": kolam_to_dict(result)}


def handle_placement_validate(body: dict) -> dict:
    partial = placement_from_dict(body)
    return validate_partial(partial).to_dict()


def handle_render(body: dict) -> str:
    kolam = kolam_from_dict(body.get("kolam", body))
    style = RenderStyle()
    overrides = body.get("style", {})
    if overrides:
        try:
            style = style_with(style, **{str(k): v for k, v in overrides.items()})
        except TypeError as exc:
            raise FormatError(f"bad style options: {overrides!r}") from exc
    return render_svg(kolam, style)


GET_ROUTES = {
    "/api/template": template_payload,
    "/api/count": handle_count,
    "/api/count/exact": handle_count_exact,
    "/api/count/orbits": handle_count_orbits,
    "/api/enumerate": handle_enumerate,
    "/api/min-tiles": handle_min_tiles,
    "/api/mirror-constraints": handle_mirror_constraints,
}

POST_ROUTES = {
    "/api/classify": handle_classify,
    "/api/trace": handle_trace,
    "/api/feasibility": handle_feasibility,
    "/api/compose": handle_compose,
    "/api/placement/validate": handle_placement_validate,
}


def _error_status(exc: Exception) -> tuple[int, str]:
    if isinstance(exc, CapExceededError):
        return 413, "cap-exceeded"
    if isinstance(exc, InapplicableSymmetryError):
        return 422, "inapplicable-symmetry"
    if isinstance(exc, (FormatError, InvalidSizeError, SizeMismatchError, UnknownCellError)):
        return 400, "bad-request"
    if isinstance(exc, SikkuError):
        return 400, "bad-request"
    return 500, "internal-error"


class KolamRequestHandler(BaseHTTPRequestHandler):
    server_version = "sikku/0.1"
    ui_dir: Path | None = None

    # -- plumbing ---------------------------------------------------------

    def log_message(self, fmt: str, *args) -> None:  # pragma: no cover
        if getattr(self.server, "verbose", False):
            super().log_message(fmt, *args)

    def _send(self, status: int, content: bytes, content_type: str) -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(content)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(content)

    def _send_json(self, status: int, payload: dict) -> None:
        self._send(status, json.dumps(payload).encode(), "application/json")

    def _send_error_json(self, exc: Exception) -> None:
        status, code = _error_status(exc)
        self._send_json(status, {"error": {"code": code, "message": str(exc)}})

    def do_OPTIONS(self) -> None:  # pragma: no cover - exercised by browsers
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()

    # -- routes ------------------------------------------------------------

    def do_GET(self) -> None:
        parsed = urlparse(self.path)
        handler = GET_ROUTES.get(parsed.path)
        if handler is not None:
            q = parse_qs(parsed.query)
            try:
                if handler is template_payload:
                    payload = handler(_template_from_query(q))
                else:
                    payload = handler(q)
                self._send_json(200, payload)
            except Exception as exc:  # noqa: BLE001 - mapped to HTTP statuses
                self._send_error_json(exc)
            return
        if parsed.path.startswith("/api/"):
            self._send_json(404, {"error": {"code": "not-found", "message": parsed.path}})
            return
        self._serve_static(parsed.path)

    def do_POST(self) -> None:
        parsed = urlparse(self.path)
        handler = POST_ROUTES.get(parsed.path)
        if handler is None and parsed.path != "/api/render":
            self._send_json(404, {"error": {"code": "not-found", "message": parsed.path}})
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
            if length > MAX_BODY:
                raise CapExceededError(f"request body of {length} bytes exceeds {MAX_BODY}")
            raw = self.rfile.read(length)
            try:
                body = json.loads(raw.decode() or "{}")
            except (json.JSONDecodeError, UnicodeDecodeError) as exc:
                raise FormatError(f"invalid JSON body: {exc}") from exc
            if not isinstance(body, dict):
                raise FormatError("request body must be a JSON object")
            if parsed.path == "/api/render":
                svg = handle_render(body)
                self._send(200, svg.encode(), "image/svg+xml")
            else:
                self._send_json(200, handler(body))
        except Exception as exc:  # noqa: BLE001 - mapped to HTTP statuses
            self._send_error_json(exc)

    # -- static UI -----------------------------------------------------------

    def _serve_static(self, path: str) -> None:
        root = self.ui_dir
        if root is None or not root.is_dir():
            body = (
                "<!doctype html><title>sikku service</title>"
                "<h1>sikku kolam service</h1>"
                "<p>No UI bundle configured. API endpoints live under /api/.</p>"
            ).encode()
            self._send(200, body, "text/html; charset=utf-8")
            return
        clean = posixpath.normpath(path.lstrip("/")) or "."
        if clean.startswith(".."):
            self._send_json(404, {"error": {"code": "not-found", "message": path}})
            return
        target = (root / clean).resolve()
        if target.is_dir():
            target = target / "index.html"
        try:
            target.relative_to(root.resolve())
        except ValueError:
            self._send_json(404, {"error": {"code": "not-found", "message": path}})
            return
        if not target.is_file():
            self._send_json(404, {"error": {"code": "not-found", "message": path}})
            return
        ctype = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
        self._send(200, target.read_bytes(), ctype)


def make_server(
    host: str = "127.0.0.1", port: int = 8008, ui_dir: str | Path | None = None,
    verbose: bool = False,
) -> ThreadingHTTPServer:
    handler = type("BoundHandler", (KolamRequestHandler,), {
        "ui_dir": Path(ui_dir) if ui_dir else None,
    })
    server = ThreadingHTTPServer((host, port), handler)
    server.daemon_threads = True
    server.verbose = verbose
    return server


def serve_forever(host: str, port: int, ui_dir: str | Path | None = None) -> None:  # pragma: no cover
    server = make_server(host, port, ui_dir, verbose=True)
    print(f"serving on http://{host}:{port}/ (ui: {ui_dir or 'none'})")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
