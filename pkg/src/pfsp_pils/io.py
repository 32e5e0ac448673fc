"""Instance files, due-date generation, run records and tabular vector files.

Instance text format (1-based jobs, job-major)::

    n m
    p_11 ... p_1m
    ...
    p_n1 ... p_nm
    duedates:
    d_1 ... d_n

The ``duedates:`` section is optional. With ``layout="machine_major"`` the
``m`` processing-time lines list one machine each, as in Taillard's files.
Lines starting with ``#`` and blank lines are ignored.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from .archive import ParetoArchive
from .errors import InvalidInputError, ParseError
from .model import Instance, ObjectiveSet

JOB_MAJOR = "job_major"
MACHINE_MAJOR = "machine_major"
LAYOUTS = (JOB_MAJOR, MACHINE_MAJOR)
RECORD_FORMAT = "pfsp-pils/run-record/1"


def _int_tokens(line: str, lineno: int) -> list[int]:
    out = []
    for tok in line.split():
        try:
            v = int(tok)
        except ValueError:
            raise ParseError(f"expected an integer, got {tok!r}", lineno) from None
        if v < 0:
            raise ParseError(f"negative value {v}", lineno)
        out.append(v)
    return out


def parse_instance(source, layout: str = JOB_MAJOR, name: str | None = None) -> Instance:
    """Parse an instance from a path or from the file contents.

    A ``str`` containing a newline is taken as text, any other ``str`` or
    ``os.PathLike`` as a path.
    """
    if layout not in LAYOUTS:
        raise InvalidInputError(f"unknown layout {layout!r}; choose from {LAYOUTS}")
    if isinstance(source, os.PathLike) or (isinstance(source, str) and "\n" not in source):
        path = Path(source)
        text = path.read_text()
        name = name if name is not None else path.stem
    else:
        text = source
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), start=1)]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty instance file", 1)

    lineno, header = lines[0]
    dims = _int_tokens(header, lineno)
    if len(dims) != 2 or dims[0] < 1 or dims[1] < 1:
        raise ParseError("header must be two positive integers 'n m'", lineno)
    n, m = dims
    rows, width = (n, m) if layout == JOB_MAJOR else (m, n)

    body = lines[1:]
    matrix = []
    for r in range(rows):
        if r >= len(body):
            last = body[-1][0] if body else lineno
            raise ParseError(f"expected {rows} rows of processing times, found {r}", last + 1)
        ln_no, ln = body[r]
        if ln.lower().startswith("duedates"):
            raise ParseError(f"expected {rows} rows of processing times, found {r}", ln_no)
        values = _int_tokens(ln, ln_no)
        if len(values) != width:
            raise ParseError(f"expected {width} values, got {len(values)}", ln_no)
        matrix.append(values)
    p = np.array(matrix, dtype=np.int64)
    if layout == MACHINE_MAJOR:
        p = p.T

    rest = body[rows:]
    d = None
    if rest:
        ln_no, ln = rest[0]
        if ln.lower() != "duedates:":
            raise ParseError(f"unexpected content {ln!r}; only a 'duedates:' section may follow", ln_no)
        if len(rest) < 2:
            raise ParseError("missing due-date line after 'duedates:'", ln_no + 1)
        ln_no, ln = rest[1]
        d = _int_tokens(ln, ln_no)
        if len(d) != n:
            raise ParseError(f"expected {n} due dates, got {len(d)}", ln_no)
        if len(rest) > 2:
            raise ParseError("trailing content after due dates", rest[2][0])
    return Instance(p, d, name=name or "")


def format_instance(inst: Instance, layout: str = JOB_MAJOR) -> str:
    p = inst.p if layout == JOB_MAJOR else inst.p.T
    lines = [f"{inst.n} {inst.m}"]
    lines += [" ".join(str(int(v)) for v in row) for row in p]
    if inst.has_due_dates:
        lines.append("duedates:")
        lines.append(" ".join(str(int(v)) for v in inst.d))
    return "\n".join(lines) + "\n"


def write_instance(inst: Instance, path, layout: str = JOB_MAJOR) -> None:
    Path(path).write_text(format_instance(inst, layout))


def generate_due_dates(inst: Instance, tardiness_factor: float, seed: int | None = None) -> Instance:
    """Set ``d_j = floor(tardiness_factor * sum_k p_jk)``.

    ``seed`` is accepted for randomized schemes; the default scheme is deterministic.
    """
    if not tardiness_factor > 0:
        raise InvalidInputError(f"tardiness factor must be positive, got {tardiness_factor}")
    totals = inst.p.sum(axis=1)
    d = np.array([math.floor(tardiness_factor * int(t)) for t in totals], dtype=np.int64)
    return inst.with_due_dates(d)


def generate_instance(n: int, m: int, seed: int, pmax: int = 99, tardiness_factor: float | None = None,
                      name: str | None = None) -> Instance:
    """Random instance with processing times uniform in ``[1, pmax]``."""
    if n < 1 or m < 1 or pmax < 1:
        raise InvalidInputError("n, m and pmax must be positive")
    rng = np.random.default_rng(seed)
    inst = Instance(rng.integers(1, pmax + 1, size=(n, m)), name=name or f"rand_{n}x{m}_s{seed}")
    if tardiness_factor is not None:
        inst = generate_due_dates(inst, tardiness_factor)
    return inst


@dataclass
class RunRecord:
    instance: str
    algorithm: str
    seed: int
    budget: int
    objectives: list[str]
    #: entries ``{"permutation": [...1-based...], "objectives": [...], "investigated": bool}``
    archive: list[dict]
    evaluations: int
    episodes: int
    descent_evaluations: list[int] = field(default_factory=list)
    elapsed: float = 0.0
    created: str = ""

    @classmethod
    def from_result(cls, result, instance: str = "") -> "RunRecord":
        cfg = result.config
        return cls(
            instance=instance,
            algorithm=cfg.algorithm,
            seed=int(cfg.seed),
            budget=int(cfg.max_evaluations),
            objectives=list(cfg.objectives.criteria),
            archive=archive_to_json(result.archive),
            evaluations=int(result.evaluations),
            episodes=int(result.episodes),
            descent_evaluations=[int(c) for c in result.descent_evaluations],
            elapsed=float(result.elapsed),
            created=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        )

    def vectors(self) -> np.ndarray:
        return np.array([e["objectives"] for e in self.archive], dtype=float).reshape(len(self.archive), -1)

    def to_archive(self) -> ParetoArchive:
        return archive_from_json(self.archive)


def archive_to_json(archive: ParetoArchive) -> list[dict]:
    return [
        {"permutation": [j + 1 for j in e.perm], "objectives": list(e.objs), "investigated": bool(e.investigated)}
        for e in archive
    ]


def archive_from_json(entries: list[dict]) -> ParetoArchive:
    """Rebuild an archive; raises :class:`ParseError` if the entries are not mutually non-dominated."""
    arch = ParetoArchive()
    for pos, e in enumerate(entries):
        try:
            perm = [int(j) - 1 for j in e.get("permutation", [])]
            objs = e["objectives"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed archive entry {pos}: {exc}") from None
        out = arch.update(perm, objs)
        if not out.accepted or out.removed:
            raise ParseError(f"archive entry {pos} violates mutual non-dominance")
        out.entry.investigated = bool(e.get("investigated", False))
    return arch


def write_run_record(record: RunRecord, path) -> None:
    payload = {"format": RECORD_FORMAT, **asdict(record)}
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def read_run_record(path) -> RunRecord:
    try:
        payload = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ParseError(f"not a JSON run record: {exc.msg}", exc.lineno) from None
    if not isinstance(payload, dict) or payload.pop("format", None) != RECORD_FORMAT:
        raise ParseError(f"missing or unknown record format tag (expected {RECORD_FORMAT!r})")
    try:
        record = RunRecord(**payload)
    except TypeError as exc:
        raise ParseError(f"malformed run record: {exc}") from None
    archive_from_json(record.archive)
    return record


def write_front(archive: ParetoArchive, objectives: ObjectiveSet, path, instance: str = "") -> None:
    """Store an exact or reference front in the run-record archive layout."""
    payload = {"instance": instance, "objectives": list(objectives.criteria), "archive": archive_to_json(archive)}
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def format_vectors(vectors, names=None) -> str:
    v = np.asarray(vectors)
    lines = ["# " + "\t".join(names)] if names else []
    for row in v:
        lines.append("\t".join(_fmt(x) for x in row))
    return "\n".join(lines) + "\n"


def _fmt(x) -> str:
    x = float(x)
    return str(int(x)) if x.is_integer() else repr(x)


def write_vectors(vectors, path, names=None) -> None:
    """Tab-separated export, one vector per row."""
    Path(path).write_text(format_vectors(vectors, names))


def read_vectors(path) -> np.ndarray:
    """Vectors from a tabular file, a run record or a front file."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
        if "archive" not in payload:
            raise ParseError("JSON file has no 'archive' field")
        return archive_from_json(payload["archive"]).vectors().astype(float)
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append([float(t) for t in line.replace(",", " ").split()])
        except ValueError:
            raise ParseError(f"non-numeric value in {line!r}", lineno) from None
        if len(rows[-1]) != len(rows[0]):
            raise ParseError(f"expected {len(rows[0])} columns, got {len(rows[-1])}", lineno)
    if not rows:
        raise ParseError("no vectors in file")
    return np.array(rows, dtype=float)
