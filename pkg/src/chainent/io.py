"""Result files: CSV tables with embedded provenance and JSON manifests.

Every CSV starts with two comment lines::

    # chainent-schema: <table>/<version>
    # manifest: <sha256 of the manifest identity>

followed by a header row.  The sidecar ``<stem>.json`` holds the manifest:
the identity (subcommand, parameters, tolerances, library version), the wall
time, and SHA-256 checksums of the output files.  Floats are written with 17
significant digits so values round-trip exactly.
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

from . import __version__

SCHEMA_VERSION = 1
MANIFEST_SCHEMA = f"chainent.manifest/{SCHEMA_VERSION}"
CACHE_ENV = "CHAINENT_CACHE_DIR"


class ProvenanceError(ValueError):
    """Input file and manifest do not belong together, or the schema is unexpected."""


def fmt(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, int):
        return str(value)
    if value is None:
        return ""
    v = float(value)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return format(v, ".17g")


def _canonical(obj) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=True).encode()


def manifest_identity(subcommand: str, params: Dict, tolerances: Dict) -> Dict:
    return {
        "schema": MANIFEST_SCHEMA,
        "subcommand": subcommand,
        "params": params,
        "tolerances": tolerances,
        "version": __version__,
    }


def identity_hash(identity: Dict) -> str:
    return hashlib.sha256(_canonical(identity)).hexdigest()


def render_csv(table: str, header: Sequence[str], rows: Sequence[Sequence], ident_hash: str) -> bytes:
    lines = [f"# chainent-schema: {table}/{SCHEMA_VERSION}", f"# manifest: {ident_hash}", ",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    return ("\n".join(lines) + "\n").encode()


def sha256_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def sidecar_path(path) -> Path:
    return Path(path).with_suffix(".json")


def write_outputs(path, content: bytes, identity: Dict, wall_time: float, cached: bool = False) -> Dict:
    """Write ``content`` and its manifest sidecar; return the manifest."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(content)
    manifest = dict(identity)
    manifest["identity_sha256"] = identity_hash(identity)
    manifest["wall_time_s"] = round(wall_time, 6)
    manifest["cached"] = cached
    manifest["outputs"] = {path.name: sha256_bytes(content)}
    sidecar_path(path).write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return manifest


def read_table(path, expected_table: str | None = None) -> Tuple[Dict, List[str], List[Dict[str, str]]]:
    """Parse a CSV written by :func:`render_csv` and validate it against its sidecar.

    Raises
    ------
    ProvenanceError
        Schema mismatch, missing or inconsistent manifest.
    """
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise ProvenanceError(f"cannot read {path}: {exc}") from exc
    lines = data.decode().splitlines()
    meta = {}
    body = []
    for line in lines:
        if line.startswith("# ") and ":" in line and not body:
            k, v = line[2:].split(":", 1)
            meta[k.strip()] = v.strip()
        else:
            body.append(line)
    if "chainent-schema" not in meta or "manifest" not in meta or not body:
        raise ProvenanceError(f"{path} is not a chainent table")
    table, _, version = meta["chainent-schema"].partition("/")
    if version != str(SCHEMA_VERSION):
        raise ProvenanceError(f"{path}: unsupported schema version {version!r}")
    if expected_table is not None and table not in ([expected_table] if isinstance(expected_table, str)
                                                    else expected_table):
        raise ProvenanceError(f"{path}: expected a {expected_table} table, found {table}")
    side = sidecar_path(path)
    try:
        manifest = json.loads(side.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ProvenanceError(f"missing or unreadable manifest {side}") from exc
    ident = {k: manifest.get(k) for k in ("schema", "subcommand", "params", "tolerances", "version")}
    if identity_hash(ident) != meta["manifest"]:
        raise ProvenanceError(f"{path}: embedded manifest checksum does not match {side.name}")
    if manifest.get("outputs", {}).get(path.name) != sha256_bytes(data):
        raise ProvenanceError(f"{path}: file checksum differs from its manifest")
    header = body[0].split(",")
    rows = [dict(zip(header, line.split(","))) for line in body[1:] if line]
    meta["table"] = table
    return {"meta": meta, "manifest": manifest}, header, rows


def cache_dir(explicit: str | None = None) -> Path | None:
    """Directory for cached outputs: the flag, else ``$CHAINENT_CACHE_DIR``, else none."""
    d = explicit or os.environ.get(CACHE_ENV)
    return Path(d) if d else None


def cache_lookup(directory: Path | None, ident_hash: str) -> bytes | None:
    if directory is None:
        return None
    f = directory / f"{ident_hash}.csv"
    return f.read_bytes() if f.is_file() else None


def cache_store(directory: Path | None, ident_hash: str, content: bytes) -> None:
    if directory is None:
        return
    directory.mkdir(parents=True, exist_ok=True)
    tmp = directory / f".{ident_hash}.tmp"
    tmp.write_bytes(content)
    tmp.replace(directory / f"{ident_hash}.csv")


def load_config(path) -> Dict[str, str]:
    """``key = value`` lines; ``#`` starts a comment; keys use flag spelling."""
    out: Dict[str, str] = {}
    for n, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{n}: expected 'key = value'")
        k, v = line.split("=", 1)
        out[k.strip().replace("_", "-")] = v.strip()
    return out
