"""Command-line entry point.

Exit codes: 0 success, 1 validation/schema failure, 2 I/O or usage
failure, 3 network failure. Diagnostics go to stderr; requested artifacts
go to the named output path or stdout. An optional JSON config file named
by the CLEVA_CONFIG environment variable supplies defaults (repo_url,
cache_dir, offline); flags override it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from .errors import (
    CacheError,
    ClevaError,
    IntegrityError,
    MethodNotFoundError,
    NetworkError,
    SchemaError,
    UsageError,
)
from .explog import compute_report, parse_experiment_log
from .model import CompassDocument, parse_descriptor_with_warnings
from .render import layout, render_svg, render_tikz
from .reposync import CacheState, default_cache_dir, download_method, fetch_manifest, list_cached
from .server import create_server

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_NETWORK = 3

DEFAULT_PORT = 8766
DEFAULT_BIND = "127.0.0.1"


@dataclass(frozen=True)
class Command:
    """One parsed invocation: the verb plus its validated arguments."""

    verb: str
    options: argparse.Namespace


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message, usage=self.format_usage())


def build_parser() -> _Parser:
    parser = _Parser(prog="cleva", description="Compass descriptor toolchain")
    sub = parser.add_subparsers(dest="verb", metavar="VERB")

    p = sub.add_parser("validate", help="check a descriptor file")
    p.add_argument("path", help="descriptor file (document or single entry)")
    p.add_argument("--lenient", action="store_true", help="downgrade unknown fields to warnings")

    p = sub.add_parser("render", help="render a descriptor to SVG or TikZ")
    p.add_argument("path", help="descriptor file")
    p.add_argument("--format", choices=("svg", "tikz"), default="svg")
    p.add_argument("-o", "--output", help="output path (required for svg)")
    p.add_argument("--lenient", action="store_true")

    p = sub.add_parser("export-tex", help="render a descriptor to a TikZ fragment")
    p.add_argument("path", help="descriptor file")
    p.add_argument("-o", "--output", required=True, help="output .tex path")
    p.add_argument("--lenient", action="store_true")

    p = sub.add_parser("metrics", help="compute measures from an experiment log")
    p.add_argument("path", help="experiment log file")
    p.add_argument("--select", help="comma-separated report keys to keep")
    p.add_argument("--beta", type=int, help="learning-curve cut-off batch")
    p.add_argument("--truncate-ragged", action="store_true",
                   help="truncate ragged per-task curves to the shortest")

    p = sub.add_parser("fetch", help="synchronize the methods repository")
    p.add_argument("--repo", help="repository base URL")
    p.add_argument("--offline", action="store_true", help="serve cached entries only")
    p.add_argument("--cache", help="cache directory")

    p = sub.add_parser("list", help="list cached methods")
    p.add_argument("--cache", help="cache directory")

    p = sub.add_parser("diff", help="compare two descriptor entries")
    p.add_argument("a", help="first descriptor file")
    p.add_argument("b", help="second descriptor file")

    p = sub.add_parser("serve", help="run the local HTTP API")
    p.add_argument("--port", type=int, default=DEFAULT_PORT)
    p.add_argument("--bind", default=DEFAULT_BIND)
    p.add_argument("--cache", help="cache directory")

    return parser


def parse_args(argv: list[str]) -> Command:
    """Parse argv into a Command; unknown verbs or flags raise UsageError."""
    parser = build_parser()
    options = parser.parse_args(argv)
    if not options.verb:
        raise UsageError("a verb is required", usage=parser.format_usage())
    return Command(verb=options.verb, options=options)


def _load_config() -> dict[str, Any]:
    path = os.environ.get("CLEVA_CONFIG")
    if not path:
        return {}
    with open(path, encoding="utf-8") as handle:
        config = json.load(handle)
    if not isinstance(config, dict):
        raise SchemaError("config file must hold a JSON object")
    return config


def _cache_from(options, config) -> CacheState:
    cache_dir = getattr(options, "cache", None) or config.get("cache_dir")
    return CacheState(Path(cache_dir) if cache_dir else default_cache_dir())


def _read_text(path: str) -> str:
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def _read_document(path: str, lenient: bool) -> CompassDocument:
    doc, warnings = parse_descriptor_with_warnings(_read_text(path), lenient=lenient)
    for warning in warnings:
        print(f"warning: {warning}", file=sys.stderr)
    return doc


def _single_entry(path: str):
    doc = _read_document(path, lenient=False)
    if len(doc.entries) != 1:
        raise SchemaError(
            f"{path}: diff needs a single-entry descriptor, found {len(doc.entries)} entries"
        )
    return doc.entries[0]


def _write_output(path: str | None, data: bytes) -> None:
    if path is None:
        sys.stdout.write(data.decode("utf-8"))
        sys.stdout.flush()
    else:
        Path(path).write_bytes(data)


def execute(cmd: Command) -> int:
    """Run one command; all failures are reported through exit codes."""
    options = cmd.options
    config = _load_config()

    if cmd.verb == "validate":
        _read_document(options.path, options.lenient)
        print("OK", file=sys.stderr)
        return EXIT_OK

    if cmd.verb in ("render", "export-tex"):
        fmt = "tikz" if cmd.verb == "export-tex" else options.format
        doc = _read_document(options.path, options.lenient)
        if fmt == "svg":
            if not options.output:
                raise UsageError("--output is required for svg output")
            _write_output(options.output, render_svg(layout(doc)))
        else:
            _write_output(options.output, render_tikz(doc).encode("utf-8"))
        return EXIT_OK

    if cmd.verb == "metrics":
        log = parse_experiment_log(_read_text(options.path))
        select = options.select.split(",") if options.select else None
        report = compute_report(
            log, beta=options.beta, select=select, truncate_ragged=options.truncate_ragged
        )
        for warning in report.warnings:
            print(f"warning: {warning}", file=sys.stderr)
        sys.stdout.write(json.dumps(report.values, indent=2) + "\n")
        return EXIT_OK

    if cmd.verb == "fetch":
        repo = options.repo or config.get("repo_url")
        offline = options.offline or bool(config.get("offline"))
        if not repo and not offline:
            raise UsageError("--repo is required (or set repo_url in the config)")
        cache = _cache_from(options, config)
        manifest = fetch_manifest(repo or "", cache=cache, offline=offline)
        for record in manifest.methods:
            download_method(manifest, record.id, cache, offline=offline)
            print(f"synchronized {record.id}: {record.label}", file=sys.stderr)
        print(f"{len(manifest.methods)} methods available", file=sys.stderr)
        return EXIT_OK

    if cmd.verb == "list":
        cache = _cache_from(options, config)
        for row in list_cached(cache):
            stamp = datetime.fromtimestamp(row.fetched_at, tz=timezone.utc).isoformat()
            sys.stdout.write(f"{row.id}\t{row.label}\t{stamp}\n")
        return EXIT_OK

    if cmd.verb == "diff":
        from .model import diff_entries

        entry_a = _single_entry(options.a)
        entry_b = _single_entry(options.b)
        for path, value_a, value_b in diff_entries(entry_a, entry_b):
            a = value_a.value if hasattr(value_a, "value") else value_a
            b = value_b.value if hasattr(value_b, "value") else value_b
            sys.stdout.write(f"{path}: {a} -> {b}\n")
        return EXIT_OK

    if cmd.verb == "serve":
        cache = _cache_from(options, config)
        server = create_server(options.bind, options.port, cache)
        host, port = server.server_address[:2]
        print(f"serving on http://{host}:{port}", file=sys.stderr)
        try:
            server.serve_forever()
        except KeyboardInterrupt:
            pass
        finally:
            server.server_close()
        return EXIT_OK

    raise UsageError(f"unknown verb {cmd.verb!r}")


def main(argv: list[str] | None = None) -> int:
    """Parse and execute; maps every failure onto the exit-code contract."""
    try:
        cmd = parse_args(list(sys.argv[1:] if argv is None else argv))
        return execute(cmd)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.usage:
            print(exc.usage, file=sys.stderr, end="")
        return EXIT_IO
    except (NetworkError, IntegrityError, MethodNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NETWORK
    except CacheError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ClevaError as exc:
        # remaining families: syntax, schema, version, manifest format,
        # metric, and escape errors are all validation failures
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
