"""Acceptance suite: one test per release criterion, each printing a
pass line (visible with -v / -rA). Tolerances are fixed here and must not
be loosened.

Criteria covered:
  1. schema round-trip over 10,000 random documents plus mutation catching
  2. metric oracle equivalence on 1,000 random matrices (|delta| <= 1e-12)
  3. closed-form spot checks
  4. fixture fidelity of the five bundled methods
  5. renderer determinism and geometry
  6. TikZ golden file, balanced environments, escaped labels
  7. sync integrity against a local fixture repository
  8. CLI exit-code contract under fault injection
"""

from __future__ import annotations

import hashlib
import json
import math
import random
import re
import time
import xml.etree.ElementTree as ET
from pathlib import Path

import numpy as np
import pytest

from cleva.cli import main
from cleva.errors import ClevaError, IntegrityError
from cleva.fixtures import (
    ATTESTED_INNER_MARKS,
    ATTESTED_OUTER_MARKS,
    METHOD_IDS,
    bundled_entry,
    five_method_document,
)
from cleva.metrics import (
    AccuracyMatrix,
    BaselineVector,
    ConvergenceCurve,
    OpennessSpec,
    PredictionTrace,
    ResourceTrace,
    average_accuracy,
    backward_transfer,
    computational_efficiency,
    forgetting,
    forward_transfer,
    lca,
    model_size_efficiency,
    online_codelength,
    openness,
    sample_storage_efficiency,
)
from cleva.model import parse_document, serialize_document
from cleva.render import layout, render_svg, render_tikz
from cleva.reposync import CacheState, download_method, fetch_manifest
from cleva.model import serialize_entry

from conftest import random_document
from test_reposync import RepoServer

TOL = 1e-12
GOLDEN = Path(__file__).parent / "golden" / "five_methods.tex"


def _report(name: str) -> None:
    print(f"ACCEPTANCE {name}: PASS")


# ---------------------------------------------------------------------------
# 1. Schema round-trip


def _mutators():
    """JSON-level single-field mutations that must each make a document
    invalid."""

    def set_version(doc):
        doc["version"] = "2"

    def clear_label(doc):
        doc["entries"][0]["label"] = ""

    def overlong_label(doc):
        doc["entries"][0]["label"] = "x" * 201

    def bad_slot(doc):
        doc["entries"][0]["color_slot"] = 6

    def negative_slot(doc):
        doc["entries"][0]["color_slot"] = -1

    def string_slot(doc):
        doc["entries"][0]["color_slot"] = "0"

    def duplicate_slot(doc):
        doc["entries"][1]["color_slot"] = doc["entries"][0]["color_slot"]

    def drop_inner_key(doc):
        del doc["entries"][0]["inner"]["online"]

    def bad_inner_value(doc):
        doc["entries"][0]["inner"]["online"] = "semi-supervised"

    def unknown_inner_key(doc):
        doc["entries"][0]["inner"]["brand_new"] = "none"

    def drop_outer_key(doc):
        del doc["entries"][0]["outer"]["forgetting"]

    def non_bool_outer(doc):
        doc["entries"][0]["outer"]["forgetting"] = "yes"

    def unknown_entry_field(doc):
        doc["entries"][0]["notes"] = "hi"

    def unknown_document_field(doc):
        doc["comment"] = "hi"

    def seven_entries(doc):
        template = doc["entries"][0]
        doc["entries"] = [dict(template, color_slot=i % 6) for i in range(7)]

    def bad_provenance(doc):
        doc["entries"][0]["provenance"] = {"online": "maybe"}

    single = [
        set_version, clear_label, overlong_label, bad_slot, negative_slot,
        string_slot, drop_inner_key, bad_inner_value, unknown_inner_key,
        drop_outer_key, non_bool_outer, unknown_entry_field,
        unknown_document_field, seven_entries, bad_provenance,
    ]
    return single, duplicate_slot


def test_schema_round_trip_10000_documents():
    rng = random.Random(20211005)
    started = time.monotonic()
    mutators, duplicate_slot = _mutators()
    mutation_checks = 0

    for index in range(10_000):
        doc = random_document(rng)
        text = serialize_document(doc)
        assert parse_document(text) == doc
        assert serialize_document(parse_document(text)) == text

        if index % 10 == 0 and doc.entries:
            payload = json.loads(text)
            candidates = list(mutators)
            if len(doc.entries) >= 2:
                candidates.append(duplicate_slot)
            mutate = rng.choice(candidates)
            mutate(payload)
            with pytest.raises(ClevaError):
                parse_document(json.dumps(payload))
            mutation_checks += 1

    elapsed = time.monotonic() - started
    assert elapsed < 30.0, f"round-trip suite took {elapsed:.1f}s"
    assert mutation_checks > 500
    _report("schema-round-trip")


# ---------------------------------------------------------------------------
# 2. Metric oracle suite


def _oracle_forgetting(a: np.ndarray, t: int) -> tuple[np.ndarray, float]:
    values = np.array(
        [np.max(a[: t - 1, j]) - a[t - 1, j] for j in range(t - 1)]
    )
    return values, float(np.mean(values))


def _oracle_bwt(a: np.ndarray, t: int) -> float:
    return float(np.mean([a[t - 1, j] - a[j, j] for j in range(t - 1)]))


def _oracle_fwt(a: np.ndarray, b: np.ndarray) -> float:
    t = a.shape[0]
    return float(np.mean([a[j - 1, j] - b[j] for j in range(1, t)]))


def test_metric_oracle_suite_1000_matrices():
    rng = np.random.default_rng(20211005)
    for _ in range(1_000):
        t = int(rng.integers(2, 7))
        a = rng.uniform(0.0, 1.0, size=(t, t))
        baseline = rng.uniform(0.0, 1.0, size=t)

        m = AccuracyMatrix.from_rows(a.tolist())
        b = BaselineVector(tuple(baseline.tolist()))

        assert abs(average_accuracy(m) - float(np.mean(a[-1]))) <= TOL

        fg = forgetting(m, t)
        oracle_values, oracle_avg = _oracle_forgetting(a, t)
        assert np.max(np.abs(np.array(fg.values) - oracle_values)) <= TOL
        assert abs(fg.average - oracle_avg) <= TOL

        assert abs(backward_transfer(m, t).average - _oracle_bwt(a, t)) <= TOL
        assert abs(forward_transfer(m, b).average - _oracle_fwt(a, baseline)) <= TOL

        # permuting the past rows must not change average forgetting
        order = rng.permutation(t - 1)
        shuffled = a.copy()
        shuffled[: t - 1] = a[order]
        m2 = AccuracyMatrix.from_rows(shuffled.tolist())
        assert abs(forgetting(m2, t).average - fg.average) <= TOL

    _report("metric-oracle-suite")


# ---------------------------------------------------------------------------
# 3. Closed-form spot checks


def test_closed_form_spot_checks():
    for n in (1, 3, 17):
        assert openness(OpennessSpec(n_train=n, n_test=n, n_target=n)).value == 0.0
    assert abs(
        openness(OpennessSpec(n_train=5, n_test=10, n_target=10)).value
        - (1.0 - math.sqrt(0.5))
    ) <= 1e-5

    assert online_codelength(PredictionTrace(2, (1.0, 1.0, 1.0, 1.0))) == 1.0

    curve = ConvergenceCurve((0.37, 0.37, 0.37, 0.37))
    for beta in range(4):
        assert abs(lca(curve, beta) - 0.37) <= TOL

    assert model_size_efficiency(ResourceTrace(mem_theta=(7.0, 7.0, 7.0))) == 1.0
    assert sample_storage_efficiency(
        ResourceTrace(mem_buffer=(0.0, 0.0), mem_dataset=10.0)
    ) == 1.0
    assert computational_efficiency(
        ResourceTrace(ops_train=(4.0, 9.0), ops_one_pass=(4.0, 9.0))
    ) == 1.0
    _report("closed-form-spot-checks")


# ---------------------------------------------------------------------------
# 4. Fixture fidelity


def test_fixture_fidelity():
    assert set(METHOD_IDS) == set(ATTESTED_INNER_MARKS)
    for method_id in METHOD_IDS:
        entry = bundled_entry(method_id)
        for dimension, mark in ATTESTED_INNER_MARKS[method_id].items():
            assert entry.inner[dimension] is mark, (method_id, dimension.value)
        for measure in ATTESTED_OUTER_MARKS[method_id]:
            assert entry.outer[measure] is True, (method_id, measure.value)
    _report("fixture-fidelity")


# ---------------------------------------------------------------------------
# 5. Renderer determinism and geometry


def test_renderer_determinism_and_geometry():
    doc = five_method_document()
    first = render_svg(layout(doc))
    second = render_svg(layout(doc))
    assert first == second

    text = first.decode("utf-8")
    ET.fromstring(text)
    assert text.count('class="axis"') == 11
    assert text.count('class="sector"') == 15
    assert text.count('class="entry-polygon"') == 5
    assert text.count('class="legend-item"') == 5

    plan = layout(doc)
    ordered = sorted(plan.axis_angles)
    step = 360.0 / 11.0
    for left, right in zip(ordered, ordered[1:]):
        assert abs((right - left) - step) <= 1e-9
    assert 0.0 < plan.supervised_radius < plan.unsupervised_radius
    _report("renderer-determinism-and-geometry")


# ---------------------------------------------------------------------------
# 6. TikZ golden file


def test_tikz_golden_file():
    tex = render_tikz(five_method_document())
    assert tex == GOLDEN.read_text(encoding="utf-8")

    assert tex.count("{") == tex.count("}")
    stack = []
    for kind, name in re.findall(r"\\(begin|end)\{(\w+)\}", tex):
        if kind == "begin":
            stack.append(name)
        else:
            assert stack and stack.pop() == name
    assert stack == []

    # label text must carry no unescaped specials
    for line in tex.splitlines():
        if "\\node[anchor=west" not in line:
            continue
        body = line[line.index("{", line.index("at")) :]
        for position, char in enumerate(body):
            if char in "&%#_" and (position == 0 or body[position - 1] != "\\"):
                raise AssertionError(f"unescaped {char!r} in {line!r}")
    _report("tikz-golden-file")


# ---------------------------------------------------------------------------
# 7. Sync integrity


def test_sync_integrity(tmp_path):
    server = RepoServer()
    try:
        payloads = {
            m: serialize_entry(bundled_entry(m)).encode("utf-8") for m in METHOD_IDS
        }
        manifest_obj = {
            "version": 1,
            "methods": [
                {
                    "id": m,
                    "label": bundled_entry(m).label,
                    "url": f"{server.url}/methods/{m}.json",
                    "sha256": hashlib.sha256(payloads[m]).hexdigest(),
                }
                for m in METHOD_IDS
            ],
        }
        for m, data in payloads.items():
            server.files[f"/methods/{m}.json"] = data
        server.files["/manifest.json"] = json.dumps(manifest_obj).encode("utf-8")

        cache = CacheState(tmp_path / "cache")
        manifest = fetch_manifest(server.url, cache=cache)
        for m in METHOD_IDS:
            entry = download_method(manifest, m, cache)
            assert entry.label == bundled_entry(m).label

        # a single flipped byte must be rejected without touching the cache
        victim = METHOD_IDS[3]
        path = f"/methods/{victim}.json"
        good = server.files[path]
        bad = bytearray(good)
        bad[25] ^= 0x20
        server.files[path] = bytes(bad)
        cached_before = cache.get(victim)
        cache.methods_dir.joinpath(f"{victim}.json").unlink()
        cache.methods_dir.joinpath(f"{victim}.meta.json").unlink()
        with pytest.raises(IntegrityError):
            download_method(manifest, victim, cache)
        assert cache.get(victim) is None
        server.files[path] = good
        download_method(manifest, victim, cache)
        assert cache.get(victim) == cached_before

        # warm cache: a second fetch of everything issues zero transfers
        server.request_count = 0
        for m in METHOD_IDS:
            download_method(manifest, m, cache)
        assert server.request_count == 0
    finally:
        server.close()
    _report("sync-integrity")


# ---------------------------------------------------------------------------
# 8. CLI contract


def test_cli_contract(tmp_path, capsys):
    doc_path = tmp_path / "doc.json"
    doc_path.write_text(serialize_document(five_method_document()), encoding="utf-8")
    bad_doc = tmp_path / "bad.json"
    bad_doc.write_text('{"version": "1", "entries": [{"label": ""}]}')
    absent = tmp_path / "absent.json"

    # validate
    assert main(["validate", str(doc_path)]) == 0
    assert main(["validate", str(bad_doc)]) == 1
    assert main(["validate", str(absent)]) == 2

    # render
    out_svg = tmp_path / "out.svg"
    assert main(["render", str(doc_path), "--format", "svg", "-o", str(out_svg)]) == 0
    assert main(["render", str(bad_doc), "--format", "tikz"]) == 1
    assert main(["render", str(absent), "--format", "tikz"]) == 2
    missing_dir = tmp_path / "no-such-dir" / "out.svg"
    assert main(["render", str(doc_path), "--format", "svg", "-o", str(missing_dir)]) == 2

    # metrics, including the worked matrix
    log_path = tmp_path / "log.json"
    log_path.write_text(json.dumps({"accuracy_matrix": [[0.9, None], [0.6, 0.8]]}))
    capsys.readouterr()
    assert main(["metrics", str(log_path)]) == 0
    report = json.loads(capsys.readouterr().out)
    assert abs(report["forgetting"] - 0.3) <= TOL
    assert abs(report["backward_transfer"] - (-0.3)) <= TOL
    bad_log = tmp_path / "badlog.json"
    bad_log.write_text('{"accuracy_matrix": [[0.9, null], [null, 0.8]]}')
    assert main(["metrics", str(bad_log)]) == 1
    assert main(["metrics", str(absent)]) == 2

    # fetch
    server = RepoServer()
    try:
        payload = serialize_entry(bundled_entry(METHOD_IDS[0])).encode("utf-8")
        server.files["/methods/m.json"] = payload
        manifest = {
            "version": 1,
            "methods": [
                {
                    "id": "m",
                    "label": "M",
                    "url": f"{server.url}/methods/m.json",
                    "sha256": hashlib.sha256(payload).hexdigest(),
                }
            ],
        }
        server.files["/manifest.json"] = json.dumps(manifest).encode("utf-8")
        cache_dir = tmp_path / "cache"
        assert main(["fetch", "--repo", server.url, "--cache", str(cache_dir)]) == 0

        # tampered payload: network-class failure
        flipped = bytearray(payload)
        flipped[5] ^= 0x01
        server.files["/methods/m.json"] = bytes(flipped)
        cache2 = tmp_path / "cache2"
        assert main(["fetch", "--repo", server.url, "--cache", str(cache2)]) == 3

        # manifest schema failure
        server.files["/manifest.json"] = json.dumps({"version": 99, "methods": []}).encode()
        assert main(["fetch", "--repo", server.url, "--cache", str(cache2)]) == 1
    finally:
        server.close()
    assert main(["fetch", "--repo", "http://127.0.0.1:1", "--cache", str(tmp_path / "c3")]) == 3
    _report("cli-contract")
