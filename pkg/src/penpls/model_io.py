"""Dataset ingestion and the versioned, line-oriented model file format.

Model files are human-readable ``key = value`` text.  Numbers are written in
shortest round-trip decimal form, so loading reproduces predictions
bit-identically.  The first line is the version tag; unknown tags are
refused, never reinterpreted.
"""
from __future__ import annotations

import csv
import hashlib
from dataclasses import dataclass
from datetime import datetime, timezone

import numpy as np

from .errors import DataError, ModelFormatError
from .gam import GamModel
from .penalty import PenaltySpec
from .splines import SplineBasis

FORMAT_TAG = "penpls-model-v1"


@dataclass(frozen=True)
class Dataset:
    """A parsed delimited file: predictor matrix, response, and names."""

    predictor_names: tuple[str, ...]
    response_name: str
    X: np.ndarray
    y: np.ndarray

    @property
    def n(self) -> int:
        return len(self.y)

    @property
    def p(self) -> int:
        return self.X.shape[1]


def _read_table(path):
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    rows = [r for r in rows if r]
    if not rows:
        raise DataError(f"{path}: empty file")
    header = [name.strip() for name in rows[0]]
    if len(set(header)) != len(header):
        dupes = sorted({n for n in header if header.count(n) > 1})
        raise DataError(f"{path}: duplicate column names {dupes}")
    parsed = []
    for ridx, row in enumerate(rows[1:], start=1):
        if len(row) != len(header):
            raise DataError(
                f"{path}: row {ridx} has {len(row)} cells, expected "
                f"{len(header)}")
        values = []
        for name, cell in zip(header, row):
            try:
                v = float(cell)
            except ValueError:
                raise DataError(
                    f"{path}: row {ridx}, column {name!r}: cannot parse "
                    f"{cell.strip()!r}") from None
            if not np.isfinite(v):
                raise DataError(
                    f"{path}: row {ridx}, column {name!r}: non-finite value")
            values.append(v)
        parsed.append(values)
    return header, np.array(parsed, dtype=float)


def ingest(path, response_column: str) -> Dataset:
    """Read a comma-delimited file and split off the response column."""
    header, table = _read_table(path)
    if response_column not in header:
        raise DataError(
            f"{path}: no column named {response_column!r} "
            f"(columns: {', '.join(header)})")
    if table.shape[0] < 3:
        raise DataError(f"{path}: need at least 3 data rows, "
                        f"got {table.shape[0]}")
    yi = header.index(response_column)
    predictors = tuple(n for n in header if n != response_column)
    keep = [i for i in range(len(header)) if i != yi]
    return Dataset(predictor_names=predictors, response_name=response_column,
                   X=table[:, keep], y=table[:, yi])


def ingest_for_model(path, predictor_names, response_name):
    """Read new data for prediction against a fitted model.

    The file must contain exactly the model's predictor columns, optionally
    plus the response column; anything else is an error naming the columns.
    Returns (X aligned to the model's column order, y or None).
    """
    header, table = _read_table(path)
    allowed = set(predictor_names) | {response_name}
    extra = [n for n in header if n not in allowed]
    if extra:
        raise DataError(f"{path}: unexpected columns {extra}")
    missing = [n for n in predictor_names if n not in header]
    if missing:
        raise DataError(f"{path}: missing predictor columns {missing}")
    X = table[:, [header.index(n) for n in predictor_names]]
    y = table[:, header.index(response_name)] if response_name in header else None
    return X, y


def file_sha256(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _fmt_array(a) -> str:
    return ",".join(repr(float(v)) for v in np.asarray(a, dtype=float).ravel())


def save_model(path, model: GamModel, predictor_names, response_name,
               dataset_checksum: str = ""):
    """Write the model in the versioned key/value format."""
    if len(predictor_names) != model.n_variables:
        raise ModelFormatError("predictor name count does not match model")
    lines = [FORMAT_TAG]
    lines.append(f"created = {datetime.now(timezone.utc).isoformat()}")
    lines.append(f"dataset_sha256 = {dataset_checksum}")
    lines.append(f"response = {response_name}")
    lines.append(f"predictors = {','.join(predictor_names)}")
    lines.append(f"degree = {model.bases[0].degree}")
    lines.append(f"n_basis = {model.penalty.n_basis}")
    lines.append(f"diff_order = {model.penalty.order}")
    lines.append(f"lambdas = {_fmt_array(model.penalty.lambdas)}")
    lines.append(f"requested_components = {model.requested_components}")
    lines.append(f"n_components = {model.n_components}")
    lines.append(f"intercept = {float(model.intercept)!r}")
    scale = ("none" if model.response_scale is None
             else repr(float(model.response_scale)))
    lines.append(f"response_scale = {scale}")
    for j, basis in enumerate(model.bases):
        lines.append(f"knots.{j} = {_fmt_array(basis.knots)}")
    lines.append(f"z_means = {_fmt_array(model.z_means)}")
    lines.append(f"beta = {_fmt_array(model.beta)}")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _parse_kv(lines):
    out = {}
    for line in lines:
        if not line.strip():
            continue
        if " = " not in line and not line.rstrip().endswith(" ="):
            raise ModelFormatError(f"malformed model line: {line.strip()!r}")
        key, _, value = line.partition(" =")
        out[key.strip()] = value.strip()
    return out


def load_model(path):
    """Load a model file; returns (GamModel, predictor_names, response_name).

    Raises ModelFormatError for unknown version tags or missing keys.
    """
    try:
        with open(path) as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc
    if not lines or lines[0].strip() != FORMAT_TAG:
        tag = lines[0].strip() if lines else "<empty>"
        raise ModelFormatError(
            f"{path}: unknown model format tag {tag!r} "
            f"(expected {FORMAT_TAG!r})")
    kv = _parse_kv(lines[1:])
    try:
        predictors = tuple(kv["predictors"].split(","))
        degree = int(kv["degree"])
        penalty = PenaltySpec(
            np.array([float(v) for v in kv["lambdas"].split(",")]),
            int(kv["diff_order"]), int(kv["n_basis"]))
        bases = tuple(
            SplineBasis(degree,
                        np.array([float(v) for v in kv[f"knots.{j}"].split(",")]))
            for j in range(len(predictors)))
        scale_raw = kv["response_scale"]
        model = GamModel(
            bases=bases,
            penalty=penalty,
            beta=np.array([float(v) for v in kv["beta"].split(",")]),
            intercept=float(kv["intercept"]),
            z_means=np.array([float(v) for v in kv["z_means"].split(",")]),
            response_scale=None if scale_raw == "none" else float(scale_raw),
            n_components=int(kv["n_components"]),
            requested_components=int(kv["requested_components"]),
        )
        response = kv["response"]
    except KeyError as exc:
        raise ModelFormatError(f"{path}: missing key {exc}") from exc
    except ValueError as exc:
        raise ModelFormatError(f"{path}: {exc}") from exc
    return model, predictors, response
