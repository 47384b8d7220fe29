"""Delimited-text ingestion with missing-token handling and column typing."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import IO, Union

import numpy as np

from .data import CATEGORICAL, NUMERIC, Dataset, Variable


class ParseError(ValueError):
    """Malformed delimited input (ragged rows, duplicate headers, ...)."""


@dataclass
class IngestConfig:
    delimiter: str = ","
    missing_tokens: tuple[str, ...] = ("NaN", "NA", "")
    header: bool = True
    categorical_threshold: int = 12
    anonymize: bool = False
    # optional per-column kind override: name -> "numeric" | "categorical"
    kind_overrides: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if not self.missing_tokens:
            raise ValueError("missing_tokens must be non-empty")
        if len(self.delimiter) != 1 or (
            self.delimiter != "\t" and not self.delimiter.isprintable()
        ):
            raise ValueError("delimiter must be a single visible character or tab")


def _anonymous_name(i: int) -> str:
    # A, B, ..., Z, AA, AB, ... (bijective base-26)
    name = ""
    i += 1
    while i > 0:
        i, rem = divmod(i - 1, 26)
        name = chr(ord("A") + rem) + name
    return name


def _parse_numeric(token: str) -> float | None:
    try:
        v = float(token)
    except ValueError:
        return None
    return v if math.isfinite(v) else None


def parse_table(source: Union[str, bytes, IO], cfg: IngestConfig | None = None) -> Dataset:
    """Parse delimited text into a Dataset.

    A column is numeric iff every non-missing token parses as a finite real;
    otherwise it is categorical. Missing-token matching is exact after
    stripping surrounding whitespace.
    """
    cfg = cfg or IngestConfig()
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    if isinstance(source, str):
        stream = io.StringIO(source)
        name = "dataset"
    else:
        name = getattr(source, "name", "dataset")
        raw = source.read()
        if isinstance(raw, bytes):
            raw = raw.decode("utf-8")
        stream = io.StringIO(raw)

    reader = csv.reader(stream, delimiter=cfg.delimiter)
    rows = [row for row in reader]
    if not rows:
        raise ParseError("empty input")

    if cfg.header:
        header = [h.strip() for h in rows[0]]
        body = rows[1:]
    else:
        header = [f"col{i + 1}" for i in range(len(rows[0]))]
        body = rows
    if len(set(header)) != len(header):
        dupes = sorted({h for h in header if header.count(h) > 1})
        raise ParseError(f"duplicate header names: {dupes}")

    n_cols = len(header)
    columns: list[list[str | None]] = [[] for _ in range(n_cols)]
    missing = set(cfg.missing_tokens)
    for row_no, row in enumerate(body, start=2 if cfg.header else 1):
        if len(row) != n_cols:
            raise ParseError(
                f"row {row_no}: expected {n_cols} fields, got {len(row)}"
            )
        for c, tok in enumerate(row):
            tok = tok.strip()
            columns[c].append(None if tok in missing else tok)

    if cfg.anonymize:
        names = [_anonymous_name(i) for i in range(n_cols)]
    else:
        names = header

    variables = []
    for c, col in enumerate(columns):
        recorded = [t for t in col if t is not None]
        parsed = [_parse_numeric(t) for t in recorded]
        override = cfg.kind_overrides.get(header[c])
        if override is not None:
            kind = override
        else:
            kind = NUMERIC if all(p is not None for p in parsed) else CATEGORICAL
        if kind == NUMERIC:
            values = np.array(
                [np.nan if t is None else float(t) for t in col], dtype=np.float64
            )
        else:
            values = np.array(col, dtype=object)
        variables.append(Variable(names[c], kind, values))

    return Dataset(name, variables)


def write_table(ds: Dataset, cfg: IngestConfig | None = None) -> str:
    """Serialize a Dataset back to delimited text.

    Missing cells become the first configured missing token; numeric values
    use shortest round-trip formatting so parse(write(ds)) reproduces masks
    exactly and values to full precision.
    """
    cfg = cfg or IngestConfig()
    out = io.StringIO()
    writer = csv.writer(out, delimiter=cfg.delimiter, lineterminator="\n")
    writer.writerow(ds.variable_names)
    missing_token = cfg.missing_tokens[0]
    for i in range(ds.n_items):
        row = []
        for v in ds.variables:
            if v.mask[i]:
                row.append(missing_token)
            elif v.kind == NUMERIC:
                row.append(repr(float(v.values[i])))
            else:
                row.append(str(v.values[i]))
        writer.writerow(row)
    return out.getvalue()
