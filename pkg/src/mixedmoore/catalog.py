"""On-disk catalog of verified graphs.

Layout::

    <root>/index.json
    <root>/graphs/rm_<r>_<z>_2_<hash>.mrg

Every file is written to a temporary sibling, fsynced and renamed into place,
so a reader never sees a half-written index or graph.
"""

from __future__ import annotations

import fcntl
import hashlib
import json
import os
import tempfile
from contextlib import contextmanager
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from pathlib import Path

from .graph import MixedGraph, format_graph, read_graph
from .verify import VerificationReport, verify

METHODS = ("exact", "heuristic", "external")


@dataclass
class CatalogEntry:
    r: int
    z: int
    k: int
    n: int
    status: int | None
    norm1: int | None
    radius: int | None
    diameter: int | None
    central_count: int
    method: str
    proved_optimal: bool
    graph_file: str
    timestamp: str
    classification: str = ""

    def matches(self, rep: VerificationReport) -> bool:
        return (self.status, self.norm1, self.radius, self.diameter, self.central_count,
                self.classification) == (rep.status, rep.norm1, rep.radius, rep.diameter,
                                         rep.central_count, rep.classification)


def atomic_write_text(path: Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    dfd = os.open(path.parent, os.O_RDONLY)
    try:
        os.fsync(dfd)
    finally:
        os.close(dfd)


def graph_hash(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


class Catalog:
    def __init__(self, root):
        self.root = Path(root)

    @property
    def index_path(self) -> Path:
        return self.root / "index.json"

    @contextmanager
    def _locked(self):
        self.root.mkdir(parents=True, exist_ok=True)
        with open(self.root / ".lock", "w") as lock:
            fcntl.flock(lock, fcntl.LOCK_EX)
            try:
                yield
            finally:
                fcntl.flock(lock, fcntl.LOCK_UN)

    def entries(self) -> list:
        if not self.index_path.exists():
            return []
        with open(self.index_path, encoding="utf-8") as fh:
            data = json.load(fh)
        return [CatalogEntry(**e) for e in data["entries"]]

    def add(self, g: MixedGraph, r: int, z: int, method: str, proved_optimal: bool = False,
            report: VerificationReport | None = None) -> CatalogEntry:
        if method not in METHODS:
            raise ValueError(f"unknown method {method!r}")
        report = report or verify(g, r, z)
        text = format_graph(g, r, z)
        rel = f"graphs/rm_{r}_{z}_2_{graph_hash(text)}.mrg"
        entry = CatalogEntry(
            r=r, z=z, k=2, n=g.n, status=report.status, norm1=report.norm1,
            radius=report.radius, diameter=report.diameter, central_count=report.central_count,
            method=method, proved_optimal=proved_optimal, graph_file=rel,
            timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"),
            classification=report.classification,
        )
        with self._locked():
            atomic_write_text(self.root / rel, text)
            kept = [e for e in self.entries() if (e.graph_file, e.method) != (rel, method)]
            kept.append(entry)
            kept.sort(key=lambda e: (e.r, e.z, e.status if e.status is not None else 1 << 62,
                                     e.graph_file, e.method))
            payload = {"version": 1, "entries": [asdict(e) for e in kept]}
            atomic_write_text(self.index_path, json.dumps(payload, indent=2) + "\n")
        return entry

    def reverify(self) -> list:
        """Entries whose graph file is missing or no longer matches its metrics."""
        bad = []
        for e in self.entries():
            path = self.root / e.graph_file
            if not path.exists():
                bad.append((e, "graph file missing"))
                continue
            g, r, z = read_graph(path)
            if not e.matches(verify(g, r, z)):
                bad.append((e, "metrics differ"))
        return bad

    def best(self, r: int, z: int):
        cands = [e for e in self.entries() if (e.r, e.z) == (r, z) and e.status is not None]
        return min(cands, key=lambda e: e.status, default=None)
