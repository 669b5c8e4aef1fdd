"""Methods-repository client: manifest fetch, digest-verified downloads,
and a local content-addressed cache.

The repository is static file hosting: `<repo_url>/manifest.json` lists
method descriptors with their SHA-256 digests. Nothing reaches the cache
or the caller without its digest verifying; cache writes are
write-temp-then-rename so crashes never leave partial entries visible.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import re
import tempfile
import time
import urllib.error
import urllib.parse
import urllib.request
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, NamedTuple

from .errors import (
    CacheError,
    IntegrityError,
    JsonSyntaxError,
    ManifestFormatError,
    MethodNotFoundError,
    NetworkError,
    VersionError,
)
from .model import CompassEntry, parse_entry

log = logging.getLogger(__name__)

MANIFEST_VERSION = 1
_SHA256_RE = re.compile(r"^[0-9a-f]{64}$")
_DEFAULT_TIMEOUT = 10.0


@dataclass(frozen=True)
class MethodRecord:
    id: str
    label: str
    url: str
    sha256: str


@dataclass(frozen=True)
class Manifest:
    version: int
    methods: tuple[MethodRecord, ...]

    def find(self, method_id: str) -> MethodRecord:
        for record in self.methods:
            if record.id == method_id:
                return record
        raise MethodNotFoundError(f"method {method_id!r} is not in the manifest")


class CacheRow(NamedTuple):
    id: str
    label: str
    fetched_at: float


def default_cache_dir() -> Path:
    base = os.environ.get("XDG_CACHE_HOME")
    root = Path(base) if base else Path.home() / ".cache"
    return root / "cleva"


class CacheState:
    """Per-id descriptor bytes plus their digest and fetch timestamp."""

    def __init__(self, root: Path | str):
        self.root = Path(root)
        self.methods_dir = self.root / "methods"

    def _payload_path(self, method_id: str) -> Path:
        return self.methods_dir / f"{method_id}.json"

    def _meta_path(self, method_id: str) -> Path:
        return self.methods_dir / f"{method_id}.meta.json"

    def _atomic_write(self, path: Path, data: bytes) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
        try:
            with os.fdopen(fd, "wb") as handle:
                handle.write(data)
            os.replace(tmp_name, path)
        except OSError:
            try:
                os.unlink(tmp_name)
            except OSError:
                pass
            raise

    def get(self, method_id: str) -> bytes | None:
        """Cached payload bytes, or None when absent or digest-invalid."""
        payload_path = self._payload_path(method_id)
        meta_path = self._meta_path(method_id)
        if not payload_path.is_file() or not meta_path.is_file():
            return None
        try:
            data = payload_path.read_bytes()
            meta = json.loads(meta_path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError):
            return None
        if hashlib.sha256(data).hexdigest() != meta.get("sha256"):
            return None
        return data

    def put(self, method_id: str, data: bytes, sha256: str, label: str) -> None:
        try:
            self._atomic_write(self._payload_path(method_id), data)
            meta = {"sha256": sha256, "label": label, "fetched_at": time.time()}
            self._atomic_write(
                self._meta_path(method_id),
                json.dumps(meta, sort_keys=True).encode("utf-8"),
            )
        except OSError as exc:
            raise CacheError(f"cannot write cache entry {method_id!r}: {exc}") from exc

    def put_manifest(self, data: bytes) -> None:
        try:
            self._atomic_write(self.root / "manifest.json", data)
        except OSError as exc:
            raise CacheError(f"cannot write cached manifest: {exc}") from exc

    def get_manifest(self) -> bytes | None:
        path = self.root / "manifest.json"
        try:
            return path.read_bytes() if path.is_file() else None
        except OSError:
            return None


Fetcher = Callable[[str, float], bytes]


def _http_get(url: str, timeout: float) -> bytes:
    try:
        with urllib.request.urlopen(url, timeout=timeout) as response:
            if response.status != 200:
                raise NetworkError(
                    f"GET {url} returned status {response.status}", url=url
                )
            return response.read()
    except urllib.error.HTTPError as exc:
        raise NetworkError(f"GET {url} failed: HTTP {exc.code}", url=url) from exc
    except (urllib.error.URLError, TimeoutError, OSError) as exc:
        raise NetworkError(f"GET {url} failed: {exc}", url=url) from exc


def parse_manifest(data: bytes) -> Manifest:
    """Parse manifest bytes and check every invariant."""
    try:
        obj = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ManifestFormatError(f"malformed manifest: {exc}") from exc
    if not isinstance(obj, dict):
        raise ManifestFormatError("manifest must be a JSON object")
    version = obj.get("version")
    if not isinstance(version, int) or isinstance(version, bool):
        raise ManifestFormatError("manifest version must be an integer")
    if version != MANIFEST_VERSION:
        raise VersionError(f"unrecognized manifest version {version}")
    methods_raw = obj.get("methods")
    if not isinstance(methods_raw, list):
        raise ManifestFormatError("manifest needs a methods array")

    records = []
    seen: set[str] = set()
    for item in methods_raw:
        if not isinstance(item, dict):
            raise ManifestFormatError("method records must be objects")
        missing = [k for k in ("id", "label", "url", "sha256") if k not in item]
        if missing:
            raise ManifestFormatError(f"method record missing {', '.join(missing)}")
        method_id = item["id"]
        if not isinstance(method_id, str) or not method_id:
            raise ManifestFormatError("method id must be a non-empty string")
        if method_id in seen:
            raise ManifestFormatError(f"duplicate method id {method_id!r}")
        seen.add(method_id)
        url = item["url"]
        if not isinstance(url, str) or not urllib.parse.urlparse(url).scheme:
            raise ManifestFormatError(f"method {method_id!r} url must be absolute")
        digest = item["sha256"]
        if not isinstance(digest, str) or not _SHA256_RE.fullmatch(digest):
            raise ManifestFormatError(
                f"method {method_id!r} sha256 must be 64 lowercase hex characters"
            )
        label = item["label"]
        if not isinstance(label, str) or not label:
            raise ManifestFormatError(f"method {method_id!r} label must be a string")
        records.append(MethodRecord(id=method_id, label=label, url=url, sha256=digest))

    return Manifest(version=version, methods=tuple(records))


def fetch_manifest(
    repo_url: str,
    *,
    cache: CacheState | None = None,
    offline: bool = False,
    timeout: float = _DEFAULT_TIMEOUT,
    fetcher: Fetcher = _http_get,
) -> Manifest:
    """Fetch and validate `<repo_url>/manifest.json`; offline mode reads
    the cached copy instead of the network."""
    if offline:
        if cache is None or (data := cache.get_manifest()) is None:
            raise MethodNotFoundError("no cached manifest available offline")
        return parse_manifest(data)
    url = repo_url.rstrip("/") + "/manifest.json"
    data = fetcher(url, timeout)
    manifest = parse_manifest(data)
    if cache is not None:
        cache.put_manifest(data)
    return manifest


def download_method(
    manifest: Manifest,
    method_id: str,
    cache: CacheState,
    *,
    offline: bool = False,
    timeout: float = _DEFAULT_TIMEOUT,
    fetcher: Fetcher = _http_get,
) -> CompassEntry:
    """Return one method's entry, serving from the cache when the stored
    digest matches the manifest and verifying every download before it
    touches the cache or the caller."""
    record = manifest.find(method_id)

    cached = cache.get(method_id)
    if cached is not None and hashlib.sha256(cached).hexdigest() == record.sha256:
        return parse_entry(cached.decode("utf-8"))

    if offline:
        raise MethodNotFoundError(
            f"method {method_id!r} is not cached and offline mode is on"
        )

    data = fetcher(record.url, timeout)
    digest = hashlib.sha256(data).hexdigest()
    if digest != record.sha256:
        raise IntegrityError(
            f"digest mismatch for {method_id!r}: manifest {record.sha256}, got {digest}"
        )
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise JsonSyntaxError(f"descriptor for {method_id!r} is not UTF-8") from exc
    entry = parse_entry(text)
    cache.put(method_id, data, record.sha256, record.label)
    return entry


def list_cached(cache: CacheState) -> list[CacheRow]:
    """Digest-valid cache rows sorted by id; corrupted entries are
    excluded with a warning."""
    if not cache.methods_dir.is_dir():
        return []
    try:
        names = sorted(p.name for p in cache.methods_dir.iterdir())
    except OSError as exc:
        raise CacheError(f"cannot read cache directory: {exc}") from exc

    rows = []
    for name in names:
        if not name.endswith(".json") or name.endswith(".meta.json"):
            continue
        method_id = name[: -len(".json")]
        payload = cache.get(method_id)
        if payload is None:
            log.warning("cache entry %r is corrupted or incomplete; skipping", method_id)
            continue
        try:
            meta = json.loads(cache._meta_path(method_id).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError):
            log.warning("cache entry %r has unreadable metadata; skipping", method_id)
            continue
        rows.append(
            CacheRow(
                id=method_id,
                label=str(meta.get("label", "")),
                fetched_at=float(meta.get("fetched_at", 0.0)),
            )
        )
    return rows
