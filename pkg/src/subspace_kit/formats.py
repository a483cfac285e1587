"""Readers and writers for datasets and clusterings.

Datasets come in as ARFF (numeric attributes plus an optional trailing
nominal ``class`` attribute, which is dropped) or delimited text. Clusterings
go out in two shapes:

* a pair of CSV tables: one row per cluster with a 0/1 flag per dimension,
  and an (ObjectID, ClusterID) membership relation, which is n:m because
  subspace clusters may overlap;
* a compact ``.clu`` file, one cluster per line:
  ``<d flags> <object count> <sorted object ids>``.

Writers are byte-deterministic: stable orders, shortest round-trip floats,
UTF-8 with LF endings, and whole-file write-then-rename.
"""

from __future__ import annotations

import csv
import math
import os
import tempfile
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .errors import (DanglingClusterId, DimensionMismatch, FormatError, IdOutOfRange,
                     InvalidCluster, MalformedArff, MalformedCsv, MissingValue,
                     NonNumericCell, RaggedRows, UnsupportedAttribute, ValidationError)
from .model import Clustering, Dataset, SubspaceCluster, default_dim_names

_NUMERIC_TYPES = {"numeric", "real", "integer"}

_UMASK = os.umask(0)
os.umask(_UMASK)


def fmt_float(x: float) -> str:
    """Shortest decimal that round-trips to the same double."""
    return repr(float(x))


def atomic_write_text(path, text: str) -> None:
    path = Path(path)
    directory = path.parent if str(path.parent) else Path(".")
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.chmod(tmp, 0o666 & ~_UMASK)  # mkstemp creates 0600
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _read_lines(path) -> list[str]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        return fh.read().splitlines()


# -- ARFF -----------------------------------------------------------------


def _take_token(s: str) -> tuple[str, str]:
    """Split off the first (possibly quoted) token; returns (token, rest)."""
    s = s.lstrip()
    if not s:
        return "", ""
    if s[0] in "'\"":
        q = s[0]
        end = s.find(q, 1)
        if end < 0:
            raise MalformedArff(f"unterminated quote in {s!r}")
        return s[1:end], s[end + 1:]
    i = 0
    while i < len(s) and not s[i].isspace() and s[i] != "{":
        i += 1
    return s[:i], s[i:]


def _unquote(v: str) -> str:
    v = v.strip()
    if len(v) >= 2 and v[0] == v[-1] and v[0] in "'\"":
        return v[1:-1]
    return v


def read_arff(path) -> Dataset:
    """Read a dense ARFF file with numeric attributes.

    A nominal attribute is accepted only in last position and only when it
    is named ``class`` (any case); its values are skipped.
    """
    relation = None
    attrs: list[tuple[str, str]] = []  # (name, kind) with kind numeric|class
    rows: list[list[float]] = []
    in_data = False

    for lineno, raw in enumerate(_read_lines(path), 1):
        line = raw.strip()
        if not line or line.startswith("%"):
            continue
        where = f"{path}:{lineno}"
        if not in_data:
            if not line.startswith("@"):
                raise MalformedArff(f"{where}: expected a header declaration, got {line!r}")
            keyword, rest = _take_token(line)
            keyword = keyword.lower()
            if keyword == "@relation":
                name, _ = _take_token(rest)
                if not name:
                    raise MalformedArff(f"{where}: @relation without a name")
                relation = name
            elif keyword == "@attribute":
                if relation is None:
                    raise MalformedArff(f"{where}: @attribute before @relation")
                name, rest = _take_token(rest)
                type_spec = rest.strip()
                if not name or not type_spec:
                    raise MalformedArff(f"{where}: incomplete @attribute declaration")
                if any(name == a for a, _ in attrs):
                    raise MalformedArff(f"{where}: attribute {name!r} declared twice")
                if type_spec.startswith("{"):
                    if not type_spec.endswith("}"):
                        raise MalformedArff(f"{where}: unterminated nominal value list")
                    attrs.append((name, "nominal"))
                else:
                    kind = type_spec.split()[0].lower()
                    if kind in _NUMERIC_TYPES:
                        attrs.append((name, "numeric"))
                    elif kind in ("string", "date", "relational"):
                        raise UnsupportedAttribute(f"{where}: {kind} attribute {name!r} is not supported")
                    else:
                        raise MalformedArff(f"{where}: unknown attribute type {type_spec!r}")
            elif keyword == "@data":
                if relation is None:
                    raise MalformedArff(f"{where}: @data before @relation")
                in_data = True
                for i, (name, kind) in enumerate(attrs):
                    if kind != "nominal":
                        continue
                    if i != len(attrs) - 1 or name.lower() != "class":
                        raise UnsupportedAttribute(
                            f"nominal attribute {name!r} is only supported as the trailing 'class' attribute")
            else:
                raise MalformedArff(f"{where}: unknown declaration {keyword!r}")
            continue

        if line.startswith("{"):
            raise UnsupportedAttribute(f"{where}: sparse ARFF rows are not supported")
        cells = line.split(",")
        if len(cells) != len(attrs):
            raise MalformedArff(f"{where}: expected {len(attrs)} values, found {len(cells)}")
        row = []
        for (name, kind), cell in zip(attrs, cells):
            if kind != "numeric":
                continue
            cell = _unquote(cell)
            if cell == "?":
                raise MissingValue(f"{where}: missing value in attribute {name!r}")
            try:
                v = float(cell)
            except ValueError:
                raise MalformedArff(f"{where}: {cell!r} is not a number (attribute {name!r})") from None
            if not math.isfinite(v):
                raise MalformedArff(f"{where}: non-finite value {cell!r} in attribute {name!r}")
            row.append(v)
        rows.append(row)

    if relation is None:
        raise MalformedArff(f"{path}: no @relation declaration")
    if not in_data:
        raise MalformedArff(f"{path}: no @data section")
    names = [a for a, kind in attrs if kind == "numeric"]
    if not names:
        raise MalformedArff(f"{path}: no numeric attributes")
    return Dataset(np.array(rows, dtype=np.float64).reshape(len(rows), len(names)),
                   tuple(names), relation)


# -- CSV ------------------------------------------------------------------


def read_csv(path, has_header: bool = True, delimiter: str = ",") -> Dataset:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        records = [r for r in csv.reader(fh, delimiter=delimiter) if r and any(c.strip() for c in r)]
    if not records:
        raise MalformedCsv(f"{path}: file is empty")
    if has_header:
        names = [c.strip() for c in records[0]]
        body = records[1:]
        if any(not c for c in names):
            raise MalformedCsv(f"{path}: empty column name in header")
        if len(set(names)) != len(names):
            raise MalformedCsv(f"{path}: duplicate column names in header")
    else:
        names = list(default_dim_names(len(records[0])))
        body = records
    d = len(names)
    rows = []
    for i, rec in enumerate(body):
        lineno = i + (2 if has_header else 1)
        if len(rec) != d:
            raise RaggedRows(f"{path}:{lineno}: expected {d} fields, found {len(rec)}")
        row = []
        for j, cell in enumerate(rec):
            try:
                v = float(cell)
            except ValueError:
                raise NonNumericCell(f"{path}:{lineno}: column {names[j]!r} has non-numeric value {cell!r}") from None
            if not math.isfinite(v):
                raise NonNumericCell(f"{path}:{lineno}: column {names[j]!r} has non-finite value {cell!r}")
            row.append(v)
        rows.append(row)
    return Dataset(np.array(rows, dtype=np.float64).reshape(len(rows), d), tuple(names),
                   Path(path).stem)


def write_csv(data: Dataset, path, delimiter: str = ",") -> None:
    lines = [delimiter.join(data.dim_names)]
    for row in data.rows:
        lines.append(delimiter.join(fmt_float(v) for v in row))
    atomic_write_text(path, "\n".join(lines) + "\n")


def read_dataset(path, fmt: Optional[str] = None, has_header: bool = True,
                 delimiter: str = ",") -> Dataset:
    """Dispatch on ``fmt`` or, failing that, on the file extension."""
    if fmt is None:
        fmt = "arff" if str(path).lower().endswith(".arff") else "csv"
    fmt = fmt.lower()
    if fmt == "arff":
        return read_arff(path)
    if fmt == "csv":
        return read_csv(path, has_header=has_header, delimiter=delimiter)
    raise ValidationError(f"unknown dataset format {fmt!r} (expected arff or csv)")


# -- cluster tables ---------------------------------------------------------


def write_cluster_tables(c: Clustering, out_dims, out_objects,
                         dim_names: Optional[Sequence[str]] = None) -> None:
    """Write the dimension table (binary flags) and the object membership table.

    ClusterID is the cluster's 0-based position in ``c``.
    """
    names = tuple(dim_names) if dim_names is not None else default_dim_names(c.d_ref)
    if len(names) != c.d_ref:
        raise DimensionMismatch(f"{len(names)} dimension names for d={c.d_ref}")
    dims_lines = ["ClusterID," + ",".join(names)]
    obj_lines = ["ObjectID,ClusterID"]
    for cid, cl in enumerate(c.clusters):
        flags = ["1" if j in cl.dims else "0" for j in range(c.d_ref)]
        dims_lines.append(f"{cid}," + ",".join(flags))
        obj_lines.extend(f"{o},{cid}" for o in cl.sorted_objects())
    atomic_write_text(out_dims, "\n".join(dims_lines) + "\n")
    atomic_write_text(out_objects, "\n".join(obj_lines) + "\n")


def _parse_int(tok: str, where: str) -> int:
    try:
        return int(tok.strip())
    except ValueError:
        raise FormatError(f"{where}: {tok!r} is not an integer") from None


def read_cluster_tables(in_dims, in_objects, n: int, d: int) -> Clustering:
    dims_lines = [l for l in _read_lines(in_dims) if l.strip()]
    obj_lines = [l for l in _read_lines(in_objects) if l.strip()]
    if not dims_lines or not dims_lines[0].startswith("ClusterID"):
        raise FormatError(f"{in_dims}: missing 'ClusterID,...' header")
    if not obj_lines or [h.strip() for h in obj_lines[0].split(",")] != ["ObjectID", "ClusterID"]:
        raise FormatError(f"{in_objects}: missing 'ObjectID,ClusterID' header")

    dims_by_id: dict[int, frozenset] = {}
    for i, line in enumerate(dims_lines[1:], 2):
        where = f"{in_dims}:{i}"
        cells = line.split(",")
        cid = _parse_int(cells[0], where)
        flags = cells[1:]
        if len(flags) != d:
            raise FormatError(f"{where}: {len(flags)} dimension flags, expected {d}")
        if any(f.strip() not in ("0", "1") for f in flags):
            raise FormatError(f"{where}: dimension flags must be 0 or 1")
        if cid in dims_by_id:
            raise FormatError(f"{where}: ClusterID {cid} listed twice")
        dims = frozenset(j for j, f in enumerate(flags) if f.strip() == "1")
        if not dims:
            raise FormatError(f"{where}: cluster {cid} has no relevant dimension")
        dims_by_id[cid] = dims

    objs_by_id: dict[int, set] = {}
    for i, line in enumerate(obj_lines[1:], 2):
        where = f"{in_objects}:{i}"
        cells = line.split(",")
        if len(cells) != 2:
            raise FormatError(f"{where}: expected 'ObjectID,ClusterID'")
        oid, cid = _parse_int(cells[0], where), _parse_int(cells[1], where)
        if oid < 0 or oid >= n:
            raise IdOutOfRange(f"{where}: object id {oid} outside [0, {n})")
        if cid not in dims_by_id:
            raise DanglingClusterId(f"{where}: ClusterID {cid} does not appear in the dimension table")
        objs_by_id.setdefault(cid, set()).add(oid)

    missing = sorted(set(dims_by_id) - set(objs_by_id))
    if missing:
        raise DanglingClusterId(f"{in_dims}: ClusterID {missing[0]} has no member objects")
    clusters = tuple(SubspaceCluster(frozenset(objs_by_id[cid]), dims_by_id[cid])
                     for cid in sorted(dims_by_id))
    return Clustering(clusters, n, d)


# -- .clu -------------------------------------------------------------------


def format_clu(c: Clustering) -> str:
    lines = []
    for cl in c.clusters:
        flags = ["1" if j in cl.dims else "0" for j in range(c.d_ref)]
        objs = cl.sorted_objects()
        lines.append(" ".join(flags + [str(len(objs))] + [str(o) for o in objs]))
    return "".join(line + "\n" for line in lines)


def write_clu(c: Clustering, path) -> None:
    atomic_write_text(path, format_clu(c))


def _implied_dims(tokens: list[str]) -> list[int]:
    """Flag counts that would make the line a valid cluster (some flag set, count >= 1, count matches)."""
    out = []
    for k in range(1, len(tokens)):
        if tokens[k - 1] not in ("0", "1"):
            break
        count = len(tokens) - k - 1
        if count >= 1 and tokens[k].isdigit() and int(tokens[k]) == count and "1" in tokens[:k]:
            out.append(k)
    return out


def read_clu(path, n: int, d: int) -> Clustering:
    clusters = []
    for lineno, line in enumerate(_read_lines(path), 1):
        tokens = line.split()
        if not tokens:
            continue
        where = f"{path}:{lineno}"
        if len(tokens) < d + 1 or not tokens[d].isdigit() \
                or int(tokens[d]) != len(tokens) - d - 1 \
                or any(t not in ("0", "1") for t in tokens[:d]):
            implied = _implied_dims(tokens)
            if len(implied) == 1 and implied[0] != d:
                raise DimensionMismatch(
                    f"{where}: clustering has d={implied[0]} but the dataset has d={d}")
            raise FormatError(f"{where}: expected {d} flags, an object count and that many ids")
        dims = frozenset(j for j in range(d) if tokens[j] == "1")
        ids = [_parse_int(t, where) for t in tokens[d + 1:]]
        if ids != sorted(ids) or len(set(ids)) != len(ids):
            raise FormatError(f"{where}: object ids must be strictly increasing")
        for o in ids:
            if o < 0 or o >= n:
                raise IdOutOfRange(f"{where}: object id {o} outside [0, {n})")
        try:
            clusters.append(SubspaceCluster(frozenset(ids), dims))
        except InvalidCluster as e:
            raise FormatError(f"{where}: {e}") from None
    return Clustering(tuple(clusters), n, d)
