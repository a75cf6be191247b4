"""JSON mask files and the bundled example masks.

A mask file looks like::

    {
      "name": "example_5_1",
      "dilation": 2,
      "multiplicity": 1,
      "scaling": {
        "support": [1, 3],
        "coefficients": [
          {"k": 1, "positive": [["3/4/sqrt(2)"]]},
          {"k": 3, "negative": [["1/4/sqrt(2)"]]}
        ]
      },
      "wavelets": [
        {"branch": 1, "support": [-3, -1], "coefficients": [...]}
      ]
    }

Matrix entries are JSON numbers or constant-expression strings (see
:mod:`twodir_moments.expr`). A missing ``positive``/``negative`` matrix
means zero. For ``multiplicity == 1`` a bare scalar may replace ``[[x]]``.
"""

from __future__ import annotations

import json
import shutil
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import ExprError, MaskFormatError
from .expr import parse_const_expr
from .masks import CoefficientMask, MaskBundle, WaveletMask, validate

__all__ = [
    "load_mask",
    "loads_mask",
    "bundle_from_dict",
    "bundle_to_dict",
    "save_mask",
    "example_names",
    "example_path",
    "resolve_mask",
    "export_examples",
]


def _line_of(text: str | None, needle) -> str:
    if text is None:
        return ""
    target = json.dumps(needle) if isinstance(needle, str) else str(needle)
    for lineno, line in enumerate(text.splitlines(), start=1):
        if target in line:
            return f" (line {lineno})"
    return ""


class _Reader:
    def __init__(self, text: str | None):
        self.text = text

    def fail(self, where: str, message: str, needle=None):
        raise MaskFormatError(f"{where}: {message}{_line_of(self.text, needle) if needle is not None else ''}")

    def scalar(self, value, where: str) -> float:
        if isinstance(value, bool):
            self.fail(where, "booleans are not numbers", value)
        if isinstance(value, (int, float)):
            return float(value)
        if isinstance(value, str):
            try:
                return parse_const_expr(value)
            except ExprError as exc:
                self.fail(where, f"bad expression {value!r}: {exc}", value)
        self.fail(where, f"expected a number or expression, got {type(value).__name__}")

    def matrix(self, value, r: int, where: str) -> np.ndarray:
        if r == 1 and not isinstance(value, list):
            return np.array([[self.scalar(value, where)]])
        if not isinstance(value, list) or not all(isinstance(row, list) for row in value):
            self.fail(where, "expected a list of rows")
        rows = [[self.scalar(x, f"{where}[{i}][{j}]") for j, x in enumerate(row)] for i, row in enumerate(value)]
        widths = {len(row) for row in rows}
        if len(widths) > 1:
            self.fail(where, "ragged matrix rows")
        return np.array(rows, dtype=float).reshape(len(rows), widths.pop() if widths else 0)

    def integer(self, doc: dict, key: str, where: str) -> int:
        if key not in doc:
            self.fail(where, f"missing field {key!r}")
        value = doc[key]
        if isinstance(value, bool) or not isinstance(value, int):
            self.fail(where, f"field {key!r} must be an integer", value)
        return value

    def table(self, section: dict, r: int, where: str):
        if not isinstance(section, dict):
            self.fail(where, "expected an object")
        support = section.get("support")
        if not (isinstance(support, list) and len(support) == 2 and all(isinstance(x, int) for x in support)):
            self.fail(where, "field 'support' must be [k_min, k_max]")
        entries = section.get("coefficients", [])
        if not isinstance(entries, list):
            self.fail(where, "field 'coefficients' must be a list")
        pos, neg = {}, {}
        for i, entry in enumerate(entries):
            at = f"{where}.coefficients[{i}]"
            if not isinstance(entry, dict):
                self.fail(at, "expected an object")
            k = self.integer(entry, "k", at)
            if k in pos or k in neg:
                self.fail(at, f"duplicate index k={k}")
            unknown = set(entry) - {"k", "positive", "negative"}
            if unknown:
                self.fail(at, f"unknown fields {sorted(unknown)}")
            if "positive" in entry:
                pos[k] = self.matrix(entry["positive"], r, f"{at}.positive")
            if "negative" in entry:
                neg[k] = self.matrix(entry["negative"], r, f"{at}.negative")
        return tuple(support), pos, neg


def bundle_from_dict(doc: dict, text: str | None = None) -> MaskBundle:
    """Build and validate a :class:`MaskBundle` from a parsed mask document."""
    rd = _Reader(text)
    if not isinstance(doc, dict):
        rd.fail("document", "expected a JSON object")
    d = rd.integer(doc, "dilation", "document")
    r = rd.integer(doc, "multiplicity", "document")
    if "scaling" not in doc:
        rd.fail("document", "missing field 'scaling'")
    support, pos, neg = rd.table(doc["scaling"], r, "scaling")
    scaling = CoefficientMask(
        dilation=d, multiplicity=r, support=support, positive=pos, negative=neg, name=str(doc.get("name", ""))
    )
    wavelets = []
    for i, wdoc in enumerate(doc.get("wavelets", [])):
        where = f"wavelets[{i}]"
        if not isinstance(wdoc, dict):
            rd.fail(where, "expected an object")
        s = rd.integer(wdoc, "branch", where)
        wsupport, wpos, wneg = rd.table(wdoc, r, where)
        wavelets.append(WaveletMask(branch=s, support=wsupport, positive=wpos, negative=wneg))
    bundle = MaskBundle(scaling, tuple(wavelets))
    report = validate(bundle)
    if not report.ok:
        raise MaskFormatError("mask failed validation:\n" + str(report))
    return bundle


def loads_mask(text: str) -> MaskBundle:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MaskFormatError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return bundle_from_dict(doc, text)


def load_mask(path) -> MaskBundle:
    """Read a JSON mask file; raises :class:`MaskFormatError` on any problem."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise MaskFormatError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        return loads_mask(text)
    except MaskFormatError as exc:
        raise MaskFormatError(f"{path}: {exc}") from exc


def _table_to_dict(support, positive, negative) -> dict:
    entries = []
    for k in sorted(set(positive) | set(negative)):
        entry: dict = {"k": k}
        if k in positive:
            entry["positive"] = positive[k].tolist()
        if k in negative:
            entry["negative"] = negative[k].tolist()
        entries.append(entry)
    return {"support": list(support), "coefficients": entries}


def bundle_to_dict(bundle: MaskBundle) -> dict:
    """Numeric document for ``bundle``; floats survive a JSON round trip exactly."""
    mask = bundle.scaling
    doc = {
        "name": mask.name,
        "dilation": mask.dilation,
        "multiplicity": mask.multiplicity,
        "scaling": _table_to_dict(mask.support, mask.positive, mask.negative),
        "wavelets": [],
    }
    for w in bundle.wavelets:
        wdoc = {"branch": w.branch}
        wdoc.update(_table_to_dict(w.support, w.positive, w.negative))
        doc["wavelets"].append(wdoc)
    return doc


def save_mask(bundle: MaskBundle, path) -> None:
    Path(path).write_text(json.dumps(bundle_to_dict(bundle), indent=2) + "\n", encoding="utf-8")


def _data_dir():
    return resources.files("twodir_moments") / "data"


def example_names() -> list[str]:
    return sorted(p.name[: -len(".json")] for p in _data_dir().iterdir() if p.name.endswith(".json"))


def example_path(name: str):
    if name not in example_names():
        raise MaskFormatError(f"no bundled example named {name!r}")
    return _data_dir() / f"{name}.json"


def resolve_mask(spec: str) -> MaskBundle:
    """Load ``spec`` as a file path, falling back to a bundled example name."""
    path = Path(spec)
    if path.exists():
        return load_mask(path)
    if spec in example_names():
        with resources.as_file(example_path(spec)) as p:
            return load_mask(p)
    raise MaskFormatError(f"{spec}: no such file or bundled example")


def export_examples(directory) -> list[Path]:
    """Copy the bundled mask files (expressions intact) into ``directory``."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name in example_names():
        with resources.as_file(example_path(name)) as src:
            dest = out / f"{name}.json"
            shutil.copyfile(src, dest)
            written.append(dest)
    return written
