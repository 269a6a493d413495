"""Read delimited files into a :class:`MissingnessMatrix`, and the mask sidecar format.

Only missingness is kept: a cell is missing iff its whitespace-trimmed token
is in ``missing_tokens``. No type inference is done. Default tokens are
``""`` and ``"NA"``; real datasets often need more (``"."``, ``"-999"``...),
and every derived statistic depends on choosing them to match the file.

Mask sidecar layout (UTF-8 text)::

    <n_rows> <n_cols>
    <column name as a JSON string>        one line per column
    <row bitmask in lowercase hex>        one line per row

A row mask is the integer ``sum(2**j for missing column j)`` written with
exactly ``ceil(n_cols / 4)`` hex digits.
"""

from __future__ import annotations

import csv
import fnmatch
import json
from collections.abc import Iterable
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from listwise.errors import InputError, ParseError
from listwise.matrix import WORD_BITS, MissingnessMatrix

DEFAULT_MISSING_TOKENS = frozenset({"", "NA"})


@dataclass(frozen=True)
class IngestConfig:
    delimiter: str = ","
    missing_tokens: frozenset[str] = DEFAULT_MISSING_TOKENS
    drop_columns: tuple[str, ...] = ()
    drop_fully_missing: bool = False
    has_header: bool = True

    def __post_init__(self):
        object.__setattr__(self, "missing_tokens", frozenset(self.missing_tokens))
        object.__setattr__(self, "drop_columns", tuple(self.drop_columns))
        if not self.missing_tokens:
            raise InputError("missing_tokens must be non-empty")
        if len(self.delimiter) != 1:
            raise InputError(f"delimiter must be a single character, got {self.delimiter!r}")
        if self.delimiter in "\"'\r\n":
            raise InputError(f"delimiter {self.delimiter!r} is not allowed")

    def to_dict(self) -> dict:
        return {
            "delimiter": self.delimiter,
            "missing_tokens": sorted(self.missing_tokens),
            "drop_columns": list(self.drop_columns),
            "drop_fully_missing": self.drop_fully_missing,
            "has_header": self.has_header,
        }


@dataclass
class IngestReport:
    source: str
    n_rows: int = 0
    n_cols_read: int = 0
    dropped: list[tuple[str, str]] = field(default_factory=list)
    renamed: list[tuple[str, str]] = field(default_factory=list)

    @property
    def n_dropped_fully_missing(self) -> int:
        return sum(1 for _, why in self.dropped if why == "fully_missing")

    @property
    def n_dropped_by_pattern(self) -> int:
        return sum(1 for _, why in self.dropped if why == "pattern")

    def to_dict(self) -> dict:
        return {
            "n_rows": self.n_rows,
            "n_cols_read": self.n_cols_read,
            "n_dropped_fully_missing": self.n_dropped_fully_missing,
            "n_dropped_by_pattern": self.n_dropped_by_pattern,
            "dropped": [{"name": n, "reason": r} for n, r in self.dropped],
            "renamed": [{"from": a, "to": b} for a, b in self.renamed],
        }


def _unique_names(names: list[str], report: IngestReport) -> list[str]:
    used: set[str] = set()
    counts: dict[str, int] = {}
    out = []
    for name in names:
        new = name
        while new in used:
            counts[name] = counts.get(name, 0) + 1
            new = f"{name}.{counts[name]}"
        if new != name:
            report.renamed.append((name, new))
        used.add(new)
        out.append(new)
    return out


def parse_rows(rows: Iterable[list[str]], cfg: IngestConfig, source: str = "<rows>"
               ) -> tuple[MissingnessMatrix, IngestReport]:
    report = IngestReport(source=source)
    it = iter(rows)
    names: list[str] | None = None
    if cfg.has_header:
        try:
            names = [c.strip() for c in next(it)]
        except StopIteration:
            raise InputError(f"{source}: empty file") from None
    tokens = cfg.missing_tokens
    grid_rows: list[list[bool]] = []
    width = len(names) if names is not None else None
    first_line = 2 if cfg.has_header else 1
    for offset, row in enumerate(it):
        if not row:
            row = [""]
        if width is None:
            width = len(row)
        if len(row) != width:
            raise ParseError(f"{source}: expected {width} fields, found {len(row)}",
                             line=first_line + offset)
        grid_rows.append([tok.strip() in tokens for tok in row])
    if width is None or width == 0:
        raise InputError(f"{source}: no columns")
    if names is None:
        names = [f"V{j + 1}" for j in range(width)]
    if not grid_rows:
        raise InputError(f"{source}: no data rows")
    names = _unique_names(names, report)
    grid = np.array(grid_rows, dtype=bool).reshape(len(grid_rows), width)
    report.n_rows, report.n_cols_read = grid.shape

    keep = np.ones(width, dtype=bool)
    for j, name in enumerate(names):
        if any(fnmatch.fnmatchcase(name, pat) for pat in cfg.drop_columns):
            keep[j] = False
            report.dropped.append((name, "pattern"))
    if cfg.drop_fully_missing:
        fully = grid.all(axis=0)
        for j in np.flatnonzero(fully & keep).tolist():
            keep[j] = False
            report.dropped.append((names[j], "fully_missing"))
    if not keep.any():
        raise InputError(f"{source}: no columns remain after dropping")
    kept = [n for n, k in zip(names, keep) if k]
    return MissingnessMatrix.from_bool(grid[:, keep], kept), report


def ingest(path: str | Path, cfg: IngestConfig | None = None) -> tuple[MissingnessMatrix, IngestReport]:
    """Parse a delimited file; quotes embed delimiters and newlines as usual."""
    cfg = cfg or IngestConfig()
    path = Path(path)
    try:
        fh = path.open(newline="", encoding="utf-8-sig")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    with fh:
        reader = csv.reader(fh, delimiter=cfg.delimiter, quotechar='"', strict=False)
        try:
            return parse_rows(reader, cfg, source=str(path))
        except csv.Error as exc:
            raise ParseError(f"{path}: {exc}", line=reader.line_num) from exc


def _hex_width(n_cols: int) -> int:
    return (n_cols + 3) // 4


def dumps_mask(m: MissingnessMatrix) -> str:
    width = _hex_width(m.n_cols)
    lines = [f"{m.n_rows} {m.n_cols}"]
    lines.extend(json.dumps(name, ensure_ascii=False) for name in m.col_names)
    raw = m.bits.astype("<u8", copy=False)
    for i in range(m.n_rows):
        value = int.from_bytes(raw[i].tobytes(), "little")
        lines.append(format(value, f"0{width}x"))
    return "\n".join(lines) + "\n"


def loads_mask(text: str, source: str = "<mask>") -> MissingnessMatrix:
    lines = text.splitlines()
    if not lines:
        raise ParseError(f"{source}: empty mask file", line=1)
    try:
        n_rows, n_cols = (int(x) for x in lines[0].split())
    except ValueError:
        raise ParseError(f"{source}: header must be '<n_rows> <n_cols>'", line=1) from None
    if n_rows < 1 or n_cols < 1:
        raise ParseError(f"{source}: matrix must be at least 1x1", line=1)
    if len(lines) != 1 + n_cols + n_rows:
        raise ParseError(f"{source}: expected {1 + n_cols + n_rows} lines, found {len(lines)}")
    names = []
    for idx in range(1, 1 + n_cols):
        try:
            name = json.loads(lines[idx])
        except json.JSONDecodeError:
            raise ParseError(f"{source}: column name is not a JSON string", line=idx + 1) from None
        if not isinstance(name, str):
            raise ParseError(f"{source}: column name is not a JSON string", line=idx + 1)
        names.append(name)
    width = _hex_width(n_cols)
    n_words = (n_cols + WORD_BITS - 1) // WORD_BITS
    bits = np.zeros((n_rows, n_words), dtype=np.uint64)
    limit = 1 << n_cols
    for i in range(n_rows):
        line_no = 2 + n_cols + i
        token = lines[line_no - 1].strip()
        if len(token) != width:
            raise ParseError(f"{source}: row mask must have {width} hex digits", line=line_no)
        try:
            value = int(token, 16)
        except ValueError:
            raise ParseError(f"{source}: invalid hex row mask", line=line_no) from None
        if value >= limit:
            raise ParseError(f"{source}: row mask sets bits beyond column {n_cols - 1}", line=line_no)
        bits[i] = np.frombuffer(value.to_bytes(n_words * 8, "little"), dtype="<u8")
    try:
        return MissingnessMatrix(bits, n_rows, n_cols, names)
    except InputError as exc:
        raise ParseError(f"{source}: {exc}") from exc


def write_mask(m: MissingnessMatrix, path: str | Path) -> None:
    Path(path).write_text(dumps_mask(m), encoding="utf-8")


def read_mask(path: str | Path) -> MissingnessMatrix:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    return loads_mask(text, source=str(path))
