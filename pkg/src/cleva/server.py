"""Local HTTP service backing the interactive compass builder.

Every endpoint is a thin wrapper around the pure core: validation,
rendering, tooltips, and metric computation. Errors are JSON objects of
the form {code, message, path}. The server binds localhost by default and
allows cross-origin requests so a separately served UI can talk to it.
"""

from __future__ import annotations

import json
import logging
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from . import fixtures
from .errors import ClevaError, JsonSyntaxError, MetricError, SchemaError, VersionError
from .explog import compute_report, parse_experiment_log
from .model import (
    INNER_DIMENSIONS,
    OUTER_MEASURES,
    parse_document_with_warnings,
    parse_entry,
    serialize_entry,
)
from .render import layout, render_svg, render_tikz
from .reposync import CacheState, list_cached
from .tooltips import TOOLTIPS

log = logging.getLogger(__name__)

MAX_BODY_BYTES = 16 * 1024 * 1024


def _entry_object(entry) -> dict:
    return json.loads(serialize_entry(entry))


def methods_listing(cache: CacheState | None) -> list[dict]:
    """Bundled methods first, then digest-valid cached ones; a cached
    descriptor overrides the bundled copy of the same id."""
    listing: dict[str, dict] = {}
    for method_id in fixtures.METHOD_IDS:
        listing[method_id] = {
            "id": method_id,
            "label": fixtures.METHOD_LABELS[method_id],
            "source": "bundled",
            "entry": _entry_object(fixtures.bundled_entry(method_id)),
        }
    if cache is not None:
        for row in list_cached(cache):
            payload = cache.get(row.id)
            if payload is None:
                continue
            try:
                entry = parse_entry(payload.decode("utf-8"))
            except (ClevaError, UnicodeDecodeError):
                log.warning("cached entry %r does not parse; skipping", row.id)
                continue
            listing[row.id] = {
                "id": row.id,
                "label": entry.label,
                "source": "cached",
                "entry": _entry_object(entry),
            }
    return list(listing.values())


def tooltip_payload() -> dict:
    return {
        "inner": {d.value: TOOLTIPS.inner_texts[d] for d in INNER_DIMENSIONS},
        "outer": {m.value: TOOLTIPS.outer_texts[m] for m in OUTER_MEASURES},
    }


class _Handler(BaseHTTPRequestHandler):
    server_version = "cleva-serve/0.1"

    # -- plumbing ----------------------------------------------------------

    def log_message(self, fmt, *args):
        log.debug("%s %s", self.address_string(), fmt % args)

    def _send(self, status: int, content_type: str, body: bytes) -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _send_json(self, status: int, payload) -> None:
        body = json.dumps(payload, ensure_ascii=False).encode("utf-8")
        self._send(status, "application/json; charset=utf-8", body)

    def _send_error_json(self, status: int, code: str, message: str, path: str = "") -> None:
        self._send_json(status, {"code": code, "message": message, "path": path})

    def _read_body(self) -> str | None:
        length = int(self.headers.get("Content-Length") or 0)
        if length > MAX_BODY_BYTES:
            self._send_error_json(413, "payload-too-large", "request body too large")
            return None
        return self.rfile.read(length).decode("utf-8", errors="replace")

    # -- verbs -------------------------------------------------------------

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_GET(self):
        if self.path == "/" or self.path == "":
            self._send_json(
                200,
                {
                    "name": "cleva-serve",
                    "endpoints": [
                        "GET /api/methods",
                        "GET /api/tooltips",
                        "POST /api/validate",
                        "POST /api/render",
                        "POST /api/export-tex",
                        "POST /api/metrics",
                    ],
                },
            )
        elif self.path == "/api/methods":
            self._send_json(200, {"methods": methods_listing(self.server.cache)})
        elif self.path == "/api/tooltips":
            self._send_json(200, tooltip_payload())
        elif self.path in ("/api/validate", "/api/render", "/api/export-tex", "/api/metrics"):
            self._send_error_json(405, "method-not-allowed", "use POST", self.path)
        else:
            self._send_error_json(404, "not-found", "unknown endpoint", self.path)

    def do_POST(self):
        body = self._read_body()
        if body is None:
            return
        try:
            if self.path == "/api/validate":
                self._handle_validate(body)
            elif self.path == "/api/render":
                doc, _ = parse_document_with_warnings(body)
                self._send(200, "image/svg+xml", render_svg(layout(doc)))
            elif self.path == "/api/export-tex":
                doc, _ = parse_document_with_warnings(body)
                self._send(200, "text/plain; charset=utf-8", render_tikz(doc).encode("utf-8"))
            elif self.path == "/api/metrics":
                report = compute_report(parse_experiment_log(body))
                self._send_json(
                    200, {"metrics": report.values, "warnings": list(report.warnings)}
                )
            else:
                self._send_error_json(404, "not-found", "unknown endpoint", self.path)
        except JsonSyntaxError as exc:
            self._send_error_json(400, "syntax-error", str(exc), self.path)
        except VersionError as exc:
            self._send_error_json(400, "version-error", str(exc), self.path)
        except SchemaError as exc:
            path = exc.violations[0].path if exc.violations else self.path
            self._send_error_json(400, "schema-error", str(exc), path)
        except MetricError as exc:
            self._send_error_json(400, "metric-error", str(exc), self.path)
        except ClevaError as exc:
            self._send_error_json(400, "error", str(exc), self.path)
        except Exception as exc:  # pragma: no cover - defensive
            log.exception("internal error serving %s", self.path)
            self._send_error_json(500, "internal-error", str(exc), self.path)

    def _handle_validate(self, body: str) -> None:
        try:
            parse_document_with_warnings(body)
        except JsonSyntaxError:
            raise
        except SchemaError as exc:
            violations = [
                {"path": v.path, "message": v.message} for v in exc.violations
            ] or [{"path": "version", "message": str(exc)}]
            self._send_json(200, {"valid": False, "violations": violations})
            return
        self._send_json(200, {"valid": True, "violations": []})


def create_server(bind: str, port: int, cache: CacheState | None) -> ThreadingHTTPServer:
    server = ThreadingHTTPServer((bind, port), _Handler)
    server.cache = cache
    return server
