"""Databases and queries: text formats, ingestion, and synthetic generation.

Formats (UTF-8; LF or CRLF; fields separated by spaces/tabs):

* manifest -- one curve-file path per line, relative to the manifest's
  directory; blank lines and lines starting with ``#`` are skipped. The path
  as written is the curve id.
* curve file -- one vertex per line, ``x y``; further columns are ignored.
  Blank lines and ``#`` comments are skipped.
* query file -- one query per line, ``<curve-file-path> <delta>``, paths
  relative to the query file's directory.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .geometry import Curve, InvalidCurveError

__all__ = [
    "DataError",
    "MissingFileError",
    "ParseError",
    "CurveTooShortError",
    "DuplicateCurveError",
    "InvalidDeltaError",
    "Database",
    "Query",
    "read_curve",
    "write_curve",
    "load_database",
    "save_database",
    "load_queries",
    "save_queries",
    "generate_synthetic",
    "PROFILES",
    "MIN_VERTICES",
    "MAX_VERTICES",
]

MIN_VERTICES = 11
MAX_VERTICES = 769
PROFILES = ("clustered-paths", "uniform")


class DataError(Exception):
    """Ingestion failure; carries the offending file and line when known."""

    def __init__(self, message: str, path: str | os.PathLike | None = None, line: int | None = None):
        self.path = None if path is None else str(path)
        self.line = line
        where = ""
        if self.path is not None:
            where = self.path + (f":{line}" if line is not None else "") + ": "
        super().__init__(where + message)
        self.message = message


class MissingFileError(DataError):
    pass


class ParseError(DataError):
    pass


class CurveTooShortError(DataError):
    pass


class DuplicateCurveError(DataError):
    pass


class InvalidDeltaError(DataError):
    pass


@dataclass(frozen=True)
class Query:
    curve: Curve
    delta: float

    def __post_init__(self):
        if not (math.isfinite(self.delta) and self.delta >= 0):
            raise ValueError(f"delta must be finite and non-negative, got {self.delta}")


@dataclass
class Database:
    """Immutable collection of curves with unique ids."""

    curves: tuple[Curve, ...]
    source: Path | None = None
    positions: dict = field(init=False, repr=False)

    def __post_init__(self):
        self.curves = tuple(self.curves)
        self.positions = {}
        for k, c in enumerate(self.curves):
            if c.id in self.positions:
                raise DuplicateCurveError(f"duplicate curve id {c.id!r}", self.source)
            self.positions[c.id] = k

    def __len__(self) -> int:
        return len(self.curves)

    def __iter__(self):
        return iter(self.curves)

    def __getitem__(self, key) -> Curve:
        if isinstance(key, int):
            return self.curves[key]
        return self.curves[self.positions[key]]

    @property
    def ids(self) -> list:
        return [c.id for c in self.curves]


def _lines(path: Path):
    try:
        raw = path.read_bytes()
    except FileNotFoundError:
        raise MissingFileError("file not found", path) from None
    except IsADirectoryError:
        raise MissingFileError("is a directory, not a file", path) from None
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"not valid UTF-8 ({exc.reason})", path) from None
    for lineno, line in enumerate(text.split("\n"), start=1):
        line = line.rstrip("\r").strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line


def _real(token: str, path: Path, lineno: int, what: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"{what}: non-numeric token {token!r}", path, lineno) from None
    if not math.isfinite(value):
        raise ParseError(f"{what}: non-finite value {token!r}", path, lineno)
    return value


def read_curve(path: str | os.PathLike, id=None) -> Curve:
    """Parse one curve file; ``id`` defaults to the path string."""
    path = Path(path)
    pts = []
    for lineno, line in _lines(path):
        fields_ = line.split()
        if len(fields_) < 2:
            raise ParseError("expected two coordinates 'x y'", path, lineno)
        pts.append((_real(fields_[0], path, lineno, "x"), _real(fields_[1], path, lineno, "y")))
    if len(pts) < 2:
        raise CurveTooShortError(f"curve has fewer than 2 vertices ({len(pts)})", path)
    try:
        return Curve(pts, id=str(path) if id is None else id)
    except InvalidCurveError as exc:
        raise ParseError(str(exc), path) from None


def write_curve(curve: Curve, path: str | os.PathLike) -> None:
    # repr round-trips doubles exactly
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for x, y in zip(curve.xs.tolist(), curve.ys.tolist()):
            fh.write(f"{x!r} {y!r}\n")


def load_database(manifest_path: str | os.PathLike) -> Database:
    """Load every curve listed in a manifest."""
    manifest = Path(manifest_path)
    base = manifest.parent
    curves = []
    seen: dict[str, int] = {}
    for lineno, line in _lines(manifest):
        rel = line
        if rel in seen:
            raise DuplicateCurveError(
                f"duplicate path {rel!r} (first listed on line {seen[rel]})", manifest, lineno)
        seen[rel] = lineno
        curves.append(read_curve(base / rel, id=rel))
    return Database(tuple(curves), source=manifest)


def save_database(db: Database | Sequence[Curve], directory: str | os.PathLike,
                  manifest_name: str = "manifest.txt") -> Path:
    """Write curve files plus a manifest; ids become file names.

    Ids that are not safe relative paths are replaced by ``curve_<k>.txt``.
    """
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    names = []
    for k, c in enumerate(db):
        name = str(c.id) if c.id is not None else ""
        if not name or name.startswith(("/", "#")) or ".." in Path(name).parts or any(
                ch.isspace() for ch in name):
            name = f"curve_{k:06d}.txt"
        (directory / name).parent.mkdir(parents=True, exist_ok=True)
        write_curve(c, directory / name)
        names.append(name)
    manifest = directory / manifest_name
    manifest.write_text("".join(f"{n}\n" for n in names), encoding="utf-8")
    return manifest


def load_queries(path: str | os.PathLike) -> list[Query]:
    """Parse a query file: ``<curve-file-path> <delta>`` per line."""
    path = Path(path)
    out = []
    for lineno, line in _lines(path):
        fields_ = line.split()
        if len(fields_) != 2:
            raise ParseError("expected '<curve-file-path> <delta>'", path, lineno)
        rel, tok = fields_
        try:
            delta = float(tok)
        except ValueError:
            raise InvalidDeltaError(f"non-numeric delta {tok!r}", path, lineno) from None
        if not math.isfinite(delta) or delta < 0:
            raise InvalidDeltaError(f"delta must be finite and non-negative, got {tok!r}",
                                    path, lineno)
        out.append(Query(read_curve(path.parent / rel, id=rel), delta))
    return out


def save_queries(queries: Iterable[Query], path: str | os.PathLike) -> Path:
    """Write a query file and one curve file per query next to it."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = []
    for k, q in enumerate(queries):
        name = f"{path.stem}_{k:05d}.txt"
        write_curve(q.curve, path.parent / name)
        lines.append(f"{name} {q.delta!r}\n")
    path.write_text("".join(lines), encoding="utf-8")
    return path


def _vertex_count(rng: np.random.Generator) -> int:
    # log-uniform over [MIN_VERTICES, MAX_VERTICES]: many short trips, few long ones
    v = math.exp(rng.uniform(math.log(MIN_VERTICES), math.log(MAX_VERTICES + 1)))
    return min(MAX_VERTICES, max(MIN_VERTICES, int(v)))


def _route(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # Manhattan route: along x first, then y; a fixed function of the hub pair
    corner = np.array([b[0], a[1]])
    return np.array([a, corner, b])


def _sample_route(route: np.ndarray, n: int) -> np.ndarray:
    seg = np.hypot(*np.diff(route, axis=0).T)
    arc = np.concatenate([[0.0], np.cumsum(seg)])
    t = np.linspace(0.0, arc[-1], n)
    # keep the interior route corners as vertices so no sampling cuts a corner
    for corner in arc[1:-1]:
        t[np.argmin(np.abs(t - corner))] = corner
    t.sort()
    return np.column_stack([np.interp(t, arc, route[:, 0]), np.interp(t, arc, route[:, 1])])


def generate_synthetic(seed: int, count: int, profile: str = "clustered-paths", *,
                       hubs: int = 8, spacing: float = 1000.0, jitter: float = 10.0) -> Database:
    """Deterministic synthetic trajectory database.

    ``clustered-paths``: hubs sit on a ``hubs x hubs`` grid with the given
    spacing; each curve follows the Manhattan route between two distinct hubs,
    sampled at its vertex count, and every vertex (including the ends) is
    displaced uniformly within a disk of radius ``jitter``. Curves sharing a
    hub pair therefore stay within ``2 * jitter`` of each other.

    ``uniform``: Gaussian random walks with uniformly placed starts; no
    structure for the filters or the index to exploit.
    """
    if count < 0:
        raise ValueError("count must be non-negative")
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; expected one of {PROFILES}")
    rng = np.random.default_rng(seed)
    width = hubs - 1 if hubs > 1 else 1
    curves = []
    for k in range(count):
        n = _vertex_count(rng)
        if profile == "clustered-paths":
            a = rng.integers(0, hubs, size=2)
            b = rng.integers(0, hubs, size=2)
            while hubs > 1 and np.array_equal(a, b):
                b = rng.integers(0, hubs, size=2)
            pts = _sample_route(_route(a * spacing, b * spacing), n)
            r = jitter * np.sqrt(rng.random(n))
            theta = rng.uniform(0, 2 * np.pi, n)
            pts = pts + np.column_stack([r * np.cos(theta), r * np.sin(theta)])
        else:
            start = rng.uniform(0, width * spacing, size=2)
            steps = rng.normal(scale=spacing / 10, size=(n - 1, 2))
            pts = np.vstack([start, start + np.cumsum(steps, axis=0)])
        curves.append(Curve(pts, id=f"c{k:06d}.txt"))
    return Database(tuple(curves))


def hub_pair(curve: Curve, spacing: float = 1000.0) -> tuple[tuple[int, int], tuple[int, int]]:
    """Nearest grid hubs to a clustered curve's endpoints."""
    s = curve.summary
    return ((round(s.start_x / spacing), round(s.start_y / spacing)),
            (round(s.end_x / spacing), round(s.end_y / spacing)))
