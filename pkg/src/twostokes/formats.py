"""Text formats for states, Stokes tensors, coincidence records and datasets.

State and tensor files are JSON with floats written as shortest round-trip
decimals; CSV files use 17 significant digits. All writers emit ``\\n`` line
endings and a fixed field order, so equal inputs give equal bytes.
"""

import csv
import io
import json
import math

import numpy as np

from .errors import DensityError, NormalizationError, ParseError, RecordError
from .region import RegionDataset, RegionPoint
from .states import TwoPhotonState, describe_failures
from .tomography import LABELS, CoincidenceRecord, MeasurementScheme

RECORD_HEADERS = {
    "counts": ["setting_a", "setting_b", "counts"],
    "probability": ["setting_a", "setting_b", "probability"],
}
REGION_HEADER = ["x", "y", "purity", "tag", "param"]


def fmt17(x):
    return format(float(x), ".17g")


def _dumps(obj):
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def _loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _real_grid(doc, name, dim):
    if name not in doc:
        raise ParseError(f"missing field {name!r}")
    grid = doc[name]
    if not isinstance(grid, list) or len(grid) != dim:
        raise ParseError(f"field {name!r}: expected {dim} rows")
    for k, row in enumerate(grid):
        if not isinstance(row, list) or len(row) != dim:
            raise ParseError(f"field {name!r}, row {k}: expected {dim} entries")
        for v in row:
            if isinstance(v, bool) or not isinstance(v, (int, float)):
                raise ParseError(f"field {name!r}, row {k}: {v!r} is not a number")
    return np.array(grid, dtype=float)


def serialize_state(state):
    rho = state.rho if isinstance(state, TwoPhotonState) else np.asarray(state)
    doc = {
        "dim": int(rho.shape[0]),
        "re": [[float(v) for v in row] for row in rho.real],
        "im": [[float(v) for v in row] for row in rho.imag],
    }
    return _dumps(doc)


def parse_state(text, validate=True, normalize=False):
    """Read a state document; ``validate=False`` accepts non-physical matrices."""
    doc = _loads(text)
    if not isinstance(doc, dict):
        raise ParseError("state document must be a JSON object")
    dim = doc.get("dim")
    if dim != 4:
        raise ParseError(f"field 'dim': expected 4, got {dim!r}")
    rho = _real_grid(doc, "re", dim) + 1j * _real_grid(doc, "im", dim)
    state = TwoPhotonState(rho, strict=False, normalize=normalize)
    if validate and not state.physical:
        raise DensityError(
            "state is not a valid density matrix: " + describe_failures(state.report),
            state.report,
        )
    return state


def serialize_tensor(S):
    return _dumps({"s": [[float(v) for v in row] for row in np.asarray(S, dtype=float)]})


def parse_tensor(text):
    doc = _loads(text)
    if not isinstance(doc, dict):
        raise ParseError("tensor document must be a JSON object")
    S = _real_grid(doc, "s", 4)
    if abs(S[0, 0] - 1.0) > 1e-9:
        raise NormalizationError(f"S00 must be 1, got {S[0, 0]!r}")
    return S


def is_tensor_document(text):
    doc = _loads(text)
    return isinstance(doc, dict) and "s" in doc


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _count_text(n):
    n = float(n)
    return str(int(n)) if n.is_integer() else fmt17(n)


def write_records(records, scheme):
    """CSV text for one record per setting, in setting order."""
    records = sorted(records, key=lambda r: r.setting_index)
    modes = {r.counts is not None for r in records}
    if len(modes) != 1:
        raise RecordError("records mix probabilities and counts")
    counts_mode = modes.pop()
    labels = scheme.labels()
    rows = []
    for r in records:
        a, b = labels[r.setting_index]
        if a not in LABELS or b not in LABELS:
            raise RecordError(f"setting {r.setting_index} uses an analyzer without a file label")
        rows.append([a, b, _count_text(r.counts) if counts_mode else fmt17(r.probability)])
    return _csv_text(RECORD_HEADERS["counts" if counts_mode else "probability"], rows)


def read_records(text):
    """Parse a records CSV into ``(records, scheme)``; row order defines the scheme."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise ParseError("line 1: empty records file")
    header = rows[0]
    if header == RECORD_HEADERS["counts"]:
        counts_mode = True
    elif header == RECORD_HEADERS["probability"]:
        counts_mode = False
    else:
        raise ParseError(f"line 1: unexpected header {','.join(header)!r}")
    pairs, records = [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 3:
            raise ParseError(f"line {lineno}: expected 3 fields, got {len(row)}")
        a, b, value = row
        for field, label in (("setting_a", a), ("setting_b", b)):
            if label not in LABELS:
                raise ParseError(f"line {lineno}, field {field}: unknown analyzer {label!r}")
        try:
            v = float(value)
        except ValueError:
            raise ParseError(f"line {lineno}, field {header[2]}: {value!r} is not a number") from None
        if not math.isfinite(v):
            raise ParseError(f"line {lineno}, field {header[2]}: {value!r} is not finite")
        idx = len(pairs)
        pairs.append((a, b))
        try:
            if counts_mode:
                records.append(CoincidenceRecord(idx, counts=int(v) if v.is_integer() else v))
            else:
                records.append(CoincidenceRecord(idx, probability=v))
        except RecordError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    return records, MeasurementScheme.from_labels(pairs)


def _param_text(param):
    if param is None:
        return ""
    if isinstance(param, (int, np.integer)):
        return str(int(param))
    return fmt17(param)


def write_dataset(datasets):
    """CSV text for one or more region datasets, rows in dataset order."""
    if isinstance(datasets, RegionDataset):
        datasets = [datasets]
    rows = [
        [fmt17(p.x), fmt17(p.y), fmt17(p.purity), p.tag, _param_text(p.param)]
        for ds in datasets
        for p in ds.points
    ]
    return _csv_text(REGION_HEADER, rows)


def read_dataset(text):
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != REGION_HEADER:
        raise ParseError("line 1: expected header x,y,purity,tag,param")
    points = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != 5:
            raise ParseError(f"line {lineno}: expected 5 fields, got {len(row)}")
        x, y, pur, tag, param = row
        try:
            value = None if param == "" else (int(param) if param.lstrip("-").isdigit() else float(param))
            points.append(RegionPoint(float(x), float(y), float(pur), tag, value))
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if not points:
        raise ParseError("dataset has no rows")
    return RegionDataset(points, points[0].tag)
