"""Dataset container, CSV loaders, and the categorical encoding pipeline.

Loaders cover plain binary CSV, schema-driven categorical CSV, and the raw
UCI formats used in the experiments (zoo, digits, spect, soybean, car).
Datasets themselves are never bundled; see scripts/fetch_datasets.py.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .binvec import (
    BinaryVector,
    DimensionMismatch,
    Feature,
    FeatureSchema,
    encode_categorical,
    pack_bits,
)


class DataFormatError(ValueError):
    """Raised for malformed input files; message carries row/column position."""


@dataclass
class Dataset:
    """Immutable collection of equal-width binary vectors.

    `bits` is an (n, d) 0/1 matrix; `packed` is the uint64 bit-packed view
    used for fast Hamming work.
    """

    bits: np.ndarray
    name: str = "dataset"
    truth_labels: list | None = None
    schema: FeatureSchema | None = None
    missing_cells: int = 0
    _packed: np.ndarray | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        arr = np.asarray(self.bits)
        if arr.ndim != 2 or arr.size == 0:
            raise ValueError("bits must be a nonempty (n, d) matrix")
        if not np.isin(arr, (0, 1)).all():
            raise ValueError("dataset cells must be 0 or 1")
        arr = arr.astype(np.uint8)
        arr.flags.writeable = False
        self.bits = arr
        if self.truth_labels is not None:
            self.truth_labels = list(self.truth_labels)
            if len(self.truth_labels) != arr.shape[0]:
                raise ValueError("truth_labels length must equal n")

    @classmethod
    def from_vectors(cls, points: list[BinaryVector], **kw) -> "Dataset":
        return cls(np.stack([p.bits for p in points]), **kw)

    @property
    def n(self) -> int:
        return self.bits.shape[0]

    @property
    def d(self) -> int:
        return self.bits.shape[1]

    @property
    def packed(self) -> np.ndarray:
        if self._packed is None:
            self._packed = pack_bits(self.bits)
        return self._packed

    def point(self, i: int) -> BinaryVector:
        return BinaryVector(self.bits[i])

    def points(self) -> list[BinaryVector]:
        return [BinaryVector(row) for row in self.bits]


# --- delimited text ---------------------------------------------------------

def _read_rows(path, delimiter=None) -> list[list[str]]:
    text = Path(path).read_text()
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if delimiter is None:
            cells = line.split(",") if "," in line else line.split()
        else:
            cells = line.split(delimiter)
        rows.append([c.strip() for c in cells])
    if not rows:
        raise DataFormatError(f"{path}: empty file")
    return rows


def _split_label(rows, header, label_column):
    """Resolve the label column (by name or index) and strip it from rows."""
    names = None
    if header:
        names = rows[0]
        rows = rows[1:]
        if not rows:
            raise DataFormatError("no data rows after header")
    idx = None
    if label_column is not None:
        if isinstance(label_column, int):
            idx = label_column
        elif names is not None and label_column in names:
            idx = names.index(label_column)
        else:
            raise DataFormatError(f"label column {label_column!r} not found in header")
    width = len(rows[0])
    for r, row in enumerate(rows):
        if len(row) != width:
            raise DataFormatError(f"row {r}: ragged row ({len(row)} cells, expected {width})")
    labels = None
    if idx is not None:
        if idx < 0:
            idx += width
        labels = [row[idx] for row in rows]
        rows = [row[:idx] + row[idx + 1:] for row in rows]
    return rows, labels


def load_binary_csv(path, delimiter=None, header=False, label_column=None,
                    name=None) -> Dataset:
    """Load a 0/1 delimited file; an optional label column becomes truth_labels."""
    rows, labels = _split_label(_read_rows(path, delimiter), header, label_column)
    bits = np.empty((len(rows), len(rows[0])), dtype=np.uint8)
    for r, row in enumerate(rows):
        for c, cell in enumerate(row):
            if cell == "0":
                bits[r, c] = 0
            elif cell == "1":
                bits[r, c] = 1
            else:
                raise DataFormatError(f"row {r}, column {c}: non-binary cell {cell!r}")
    return Dataset(bits, name=name or Path(path).stem, truth_labels=labels)


def load_categorical_csv(path, schema: FeatureSchema, delimiter=None,
                         header=False, label_column=None, name=None,
                         missing_token="?") -> Dataset:
    """Load a categorical CSV and encode it per the schema.

    Missing cells (`missing_token`) encode as an all-zero block, so they
    mismatch every concrete level equally under the Hamming distance.
    """
    rows, labels = _split_label(_read_rows(path, delimiter), header, label_column)
    nfeat = len(schema.features)
    if len(rows[0]) != nfeat:
        raise DataFormatError(
            f"rows have {len(rows[0])} cells but schema declares {nfeat} features")
    bits = np.zeros((len(rows), schema.encoded_dim), dtype=np.uint8)
    missing = 0
    for r, row in enumerate(rows):
        col = 0
        for c, feat in enumerate(schema.features):
            cell = row[c]
            if cell == missing_token:
                missing += 1  # all-zero block
            elif feat.kind == "binary":
                if cell not in ("0", "1"):
                    raise DataFormatError(
                        f"row {r}, column {c} ({feat.name}): non-binary cell {cell!r}")
                bits[r, col] = int(cell)
            else:
                level = _resolve_level(cell, feat, r, c)
                block = encode_categorical(level, feat.levels, feat.coding)
                bits[r, col:col + feat.levels] = block.bits
            col += feat.width
    return Dataset(bits, name=name or Path(path).stem, truth_labels=labels,
                   schema=schema, missing_cells=missing)


def _resolve_level(cell: str, feat: Feature, r: int, c: int) -> int:
    if feat.vocab is not None:
        if cell not in feat.vocab:
            raise DataFormatError(
                f"row {r}, column {c} ({feat.name}): unknown level {cell!r}")
        return feat.vocab.index(cell) + 1
    try:
        level = int(cell)
    except ValueError:
        raise DataFormatError(
            f"row {r}, column {c} ({feat.name}): unknown level {cell!r}") from None
    if not 1 <= level <= feat.levels:
        raise DataFormatError(
            f"row {r}, column {c} ({feat.name}): level {level} out of [1, {feat.levels}]")
    return level


def categorical_feature(name: str, coding: str, levels_or_vocab) -> Feature:
    """Build a categorical Feature from a level count or a level vocabulary."""
    if isinstance(levels_or_vocab, int):
        return Feature(name, "categorical", levels_or_vocab, coding)
    vocab = tuple(str(v) for v in levels_or_vocab)
    return Feature(name, "categorical", len(vocab), coding, vocab)


def parse_schema_file(path) -> FeatureSchema:
    """Parse the declarative schema format.

    One feature per line:
        <name> binary
        <name> categorical <additive|disjunctive> <levels | v1,v2,...>
    '#' starts a comment.
    """
    feats = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) == 2 and parts[1] == "binary":
            feats.append(Feature(parts[0], "binary"))
        elif len(parts) == 4 and parts[1] == "categorical":
            name, _, coding, spec = parts
            if "," in spec or not spec.isdigit():
                feats.append(categorical_feature(name, coding, spec.split(",")))
            else:
                feats.append(categorical_feature(name, coding, int(spec)))
        else:
            raise DataFormatError(f"{path}:{lineno}: cannot parse schema line {line!r}")
    if not feats:
        raise DataFormatError(f"{path}: schema declares no features")
    return FeatureSchema(tuple(feats))


def write_binary_csv(ds: Dataset, path, with_labels=True) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for i in range(ds.n):
            row = [str(b) for b in ds.bits[i]]
            if with_labels and ds.truth_labels is not None:
                row.append(str(ds.truth_labels[i]))
            writer.writerow(row)


def dataset_summary(ds: Dataset) -> dict:
    out = {"name": ds.name, "n": ds.n, "d": ds.d,
           "missing_cells": ds.missing_cells}
    if ds.truth_labels is not None:
        classes = sorted(set(ds.truth_labels), key=str)
        hist = {str(c): ds.truth_labels.count(c) for c in classes}
        out["num_classes"] = len(classes)
        out["class_histogram"] = hist
        out["class_percent"] = {c: round(100.0 * v / ds.n, 2) for c, v in hist.items()}
    return out


# --- raw UCI adapters -------------------------------------------------------

ZOO_FEATURES = ["hair", "feathers", "eggs", "milk", "airborne", "aquatic",
                "predator", "toothed", "backbone", "breathes", "venomous",
                "fins", "legs", "tail", "domestic", "catsize"]
ZOO_LEGS_VALUES = ["0", "2", "4", "5", "6", "8"]

CAR_VOCABS = {
    "buying": ["vhigh", "high", "med", "low"],
    "maint": ["vhigh", "high", "med", "low"],
    "doors": ["2", "3", "4", "5more"],
    "persons": ["2", "4", "more"],
    "lug_boot": ["small", "med", "big"],
    "safety": ["low", "med", "high"],
}

SOYBEAN_KEEP_CLASSES = 15


def zoo_schema() -> FeatureSchema:
    feats = []
    for fname in ZOO_FEATURES:
        if fname == "legs":
            feats.append(categorical_feature("legs", "disjunctive", ZOO_LEGS_VALUES))
        else:
            feats.append(Feature(fname, "binary"))
    return FeatureSchema(tuple(feats))


def car_schema() -> FeatureSchema:
    return FeatureSchema(tuple(
        categorical_feature(fname, "disjunctive", vocab)
        for fname, vocab in CAR_VOCABS.items()))


def load_zoo(path) -> Dataset:
    """zoo.data: animal name, 16 features (legs is 6-valued), class 1-7."""
    rows = _read_rows(path, ",")
    data = [row[1:-1] for row in rows]  # drop animal name and class
    labels = [row[-1] for row in rows]
    tmp = Path(path).with_suffix(".zootmp")
    try:
        with open(tmp, "w") as fh:
            for row in data:
                fh.write(",".join(row) + "\n")
        ds = load_categorical_csv(tmp, zoo_schema(), delimiter=",", name="zoo")
    finally:
        tmp.unlink(missing_ok=True)
    return Dataset(ds.bits, name="zoo", truth_labels=labels, schema=ds.schema)


def load_digits(path, threshold=1) -> Dataset:
    """mfeat-pix: 2000 rows of 240 grayscale counts (0-6), 200 per digit.

    Pixels binarize as value >= threshold; labels follow the fixed row
    blocks (digit = row // 200).
    """
    raw = np.loadtxt(path)
    if raw.ndim != 2 or raw.shape[1] != 240:
        raise DataFormatError(f"{path}: expected 240 columns, got {raw.shape}")
    bits = (raw >= threshold).astype(np.uint8)
    labels = [str(i // 200) for i in range(raw.shape[0])]
    return Dataset(bits, name="digits", truth_labels=labels)


def load_spect(path) -> Dataset:
    """SPECT.train/.test concatenation: label first, then 22 binary features."""
    return load_binary_csv(path, delimiter=",", label_column=0, name="spect")


def load_soybean(path) -> Dataset:
    """soybean-large.data: class name first, 35 numeric attributes, '?' missing.

    Keeps the first 15 classes in file order; attribute arities are derived
    from the observed values (codes are 0-based in the raw file).
    """
    rows = _read_rows(path, ",")
    classes: list[str] = []
    for row in rows:
        if row[0] not in classes:
            classes.append(row[0])
    keep = set(classes[:SOYBEAN_KEEP_CLASSES])
    rows = [row for row in rows if row[0] in keep]
    labels = [row[0] for row in rows]
    nattr = len(rows[0]) - 1
    arity = []
    for c in range(nattr):
        vals = [int(row[c + 1]) for row in rows if row[c + 1] != "?"]
        arity.append(max(vals) + 1 if vals else 1)
    feats = tuple(Feature(f"attr{c}", "categorical", arity[c], "disjunctive")
                  for c in range(nattr))
    schema = FeatureSchema(feats)
    bits = np.zeros((len(rows), schema.encoded_dim), dtype=np.uint8)
    missing = 0
    for r, row in enumerate(rows):
        col = 0
        for c in range(nattr):
            cell = row[c + 1]
            if cell == "?":
                missing += 1
            else:
                bits[r, col + int(cell)] = 1  # 0-based code -> one-hot
            col += arity[c]
    return Dataset(bits, name="soybean", truth_labels=labels, schema=schema,
                   missing_cells=missing)


def load_car(path) -> Dataset:
    """car.data: 6 categorical string features, class last."""
    rows = _read_rows(path, ",")
    labels = [row[-1] for row in rows]
    tmp = Path(path).with_suffix(".cartmp")
    try:
        with open(tmp, "w") as fh:
            for row in rows:
                fh.write(",".join(row[:-1]) + "\n")
        ds = load_categorical_csv(tmp, car_schema(), delimiter=",", name="car")
    finally:
        tmp.unlink(missing_ok=True)
    return Dataset(ds.bits, name="car", truth_labels=labels, schema=ds.schema)


UCI_LOADERS = {
    "zoo": load_zoo,
    "digits": load_digits,
    "spect": load_spect,
    "soybean": load_soybean,
    "car": load_car,
}


def load_uci(name: str, path, **kw) -> Dataset:
    try:
        loader = UCI_LOADERS[name]
    except KeyError:
        raise ValueError(f"unknown dataset {name!r}; know {sorted(UCI_LOADERS)}") from None
    return loader(path, **kw)
