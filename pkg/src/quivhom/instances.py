"""Loading and validating JSON instance files.

An instance file is a single JSON object:

  {
    "field": "q" | {"fp": p},
    "quiver": {"vertices": n, "arrows": [[tail, head], ...]},
    "mode": "vector" | "p1",
    "twists": per arrow: an integer dimension (vector mode)
              or a non-increasing list of line-bundle twists (p1 mode),
    "modules": {name: module, ...}
  }

Vector-mode modules are {"dims": [...], "phi": [matrix per arrow]} with
row-major matrices whose entries are strings ("3/2") over the rationals
and plain integers over prime fields.  P1-mode modules are
{"twists": [per-vertex twist lists], "phi": [form matrix per arrow]}
where each form entry is the coefficient list of a binary form (x^d
first) or null for a forced-zero entry of negative degree.  Unknown keys
are rejected and every shape constraint is re-validated on load.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Tuple, Union

from .linalg import ExactMatrix, FieldSpec
from .quiver import Quiver
from .rep import TwistData, TwistedRep
from .sheaf import BinForm, FormMatrix, QSheafP1, SplitBundle, tensor_bundle


class InstanceError(Exception):
    """Validation failure, carrying the JSON path of the offending value."""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.reason = message


@dataclass
class Instance:
    field: FieldSpec
    quiver: Quiver
    mode: str
    twists: Union[TwistData, Tuple[SplitBundle, ...]]
    modules: Dict[str, Union[TwistedRep, QSheafP1]]


def _require_object(value, keys, path: str) -> dict:
    if not isinstance(value, dict):
        raise InstanceError("expected an object", path)
    unknown = set(value) - set(keys)
    if unknown:
        raise InstanceError(f"unknown keys {sorted(unknown)}", path)
    missing = set(keys) - set(value)
    if missing:
        raise InstanceError(f"missing keys {sorted(missing)}", path)
    return value


def _require_int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InstanceError("expected an integer", path)
    return value


def _require_list(value, path: str) -> list:
    if not isinstance(value, list):
        raise InstanceError("expected a list", path)
    return value


def _parse_field(value, path: str) -> FieldSpec:
    if value == "q":
        return FieldSpec.rationals()
    if isinstance(value, dict):
        spec = _require_object(value, ["fp"], path)
        p = _require_int(spec["fp"], f"{path}.fp")
        try:
            return FieldSpec.prime(p)
        except ValueError as e:
            raise InstanceError(str(e), f"{path}.fp")
    raise InstanceError('expected "q" or {"fp": p}', path)


def _parse_quiver(value, path: str) -> Quiver:
    spec = _require_object(value, ["vertices", "arrows"], path)
    n = _require_int(spec["vertices"], f"{path}.vertices")
    arrows = _require_list(spec["arrows"], f"{path}.arrows")
    pairs = []
    for k, arrow in enumerate(arrows):
        apath = f"{path}.arrows[{k}]"
        arrow = _require_list(arrow, apath)
        if len(arrow) != 2:
            raise InstanceError("expected [tail, head]", apath)
        pairs.append((_require_int(arrow[0], apath), _require_int(arrow[1], apath)))
    try:
        return Quiver(n, pairs)
    except ValueError as e:
        raise InstanceError(str(e), path)


def _parse_entry(field: FieldSpec, value, path: str):
    if field.is_prime_field:
        return field.element(_require_int(value, path))
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise InstanceError("expected an integer or a fraction string", path)
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise InstanceError(f"not a rational number: {value!r}", path)


def _parse_matrix(field: FieldSpec, value, rows: int, cols: int, path: str) -> ExactMatrix:
    value = _require_list(value, path)
    if len(value) != rows:
        raise InstanceError(f"expected {rows} rows, got {len(value)}", path)
    entries = []
    for r, row in enumerate(value):
        row = _require_list(row, f"{path}[{r}]")
        if len(row) != cols:
            raise InstanceError(f"expected {cols} columns, got {len(row)}", f"{path}[{r}]")
        entries.append([_parse_entry(field, x, f"{path}[{r}][{c}]")
                        for c, x in enumerate(row)])
    return ExactMatrix(field, rows, cols, entries)


def _parse_twist_list(value, path: str) -> SplitBundle:
    value = _require_list(value, path)
    twists = [_require_int(x, f"{path}[{k}]") for k, x in enumerate(value)]
    try:
        return SplitBundle(tuple(twists))
    except ValueError as e:
        raise InstanceError(str(e), path)


def _parse_vector_module(field: FieldSpec, quiver: Quiver, twist: TwistData,
                         value, path: str) -> TwistedRep:
    spec = _require_object(value, ["dims", "phi"], path)
    dims_raw = _require_list(spec["dims"], f"{path}.dims")
    if len(dims_raw) != quiver.n_vertices:
        raise InstanceError(f"expected {quiver.n_vertices} entries", f"{path}.dims")
    dims = []
    for k, d in enumerate(dims_raw):
        d = _require_int(d, f"{path}.dims[{k}]")
        if d < 0:
            raise InstanceError("dimensions must be non-negative", f"{path}.dims[{k}]")
        dims.append(d)
    phi_raw = _require_list(spec["phi"], f"{path}.phi")
    if len(phi_raw) != quiver.n_arrows:
        raise InstanceError(f"expected {quiver.n_arrows} matrices", f"{path}.phi")
    phi = []
    for a, (t, h) in enumerate(quiver.arrows):
        phi.append(_parse_matrix(field, phi_raw[a], dims[h], twist[a] * dims[t],
                                 f"{path}.phi[{a}]"))
    return TwistedRep(quiver, twist, field, dims, phi)


def _parse_form(field: FieldSpec, value, degree: int, path: str) -> BinForm:
    if value is None:
        if degree >= 0:
            return BinForm(degree, [field.zero()] * (degree + 1))
        return BinForm.zero()
    value = _require_list(value, path)
    if degree < 0:
        raise InstanceError("entry of negative degree must be null", path)
    if len(value) != degree + 1:
        raise InstanceError(f"expected {degree + 1} coefficients", path)
    coeffs = [_parse_entry(field, x, f"{path}[{k}]") for k, x in enumerate(value)]
    return BinForm(degree, coeffs)


def _parse_p1_module(field: FieldSpec, quiver: Quiver,
                     twist_bundles: Tuple[SplitBundle, ...],
                     value, path: str) -> QSheafP1:
    spec = _require_object(value, ["twists", "phi"], path)
    twists_raw = _require_list(spec["twists"], f"{path}.twists")
    if len(twists_raw) != quiver.n_vertices:
        raise InstanceError(f"expected {quiver.n_vertices} twist lists", f"{path}.twists")
    bundles = [
        _parse_twist_list(twists_raw[i], f"{path}.twists[{i}]")
        for i in range(quiver.n_vertices)
    ]
    phi_raw = _require_list(spec["phi"], f"{path}.phi")
    if len(phi_raw) != quiver.n_arrows:
        raise InstanceError(f"expected {quiver.n_arrows} form matrices", f"{path}.phi")
    phi = []
    for a, (t, h) in enumerate(quiver.arrows):
        src = tensor_bundle(twist_bundles[a], bundles[t]).bundle
        dst = bundles[h]
        mpath = f"{path}.phi[{a}]"
        raw = _require_list(phi_raw[a], mpath)
        if len(raw) != dst.rank:
            raise InstanceError(f"expected {dst.rank} rows", mpath)
        entries = []
        for r in range(dst.rank):
            row = _require_list(raw[r], f"{mpath}[{r}]")
            if len(row) != src.rank:
                raise InstanceError(f"expected {src.rank} columns", f"{mpath}[{r}]")
            entries.append([
                _parse_form(field, row[c], dst.twists[r] - src.twists[c],
                            f"{mpath}[{r}][{c}]")
                for c in range(src.rank)
            ])
        phi.append(FormMatrix(field, src, dst, entries))
    return QSheafP1(quiver, field, twist_bundles, bundles, phi)


def load_instance(document) -> Instance:
    """Validate a parsed JSON document and build the typed instance."""
    doc = _require_object(document, ["field", "quiver", "mode", "twists", "modules"], "$")
    field = _parse_field(doc["field"], "$.field")
    quiver = _parse_quiver(doc["quiver"], "$.quiver")
    mode = doc["mode"]
    if mode not in ("vector", "p1"):
        raise InstanceError('expected "vector" or "p1"', "$.mode")
    twists_raw = _require_list(doc["twists"], "$.twists")
    if len(twists_raw) != quiver.n_arrows:
        raise InstanceError(f"expected {quiver.n_arrows} entries", "$.twists")
    modules_raw = doc["modules"]
    if not isinstance(modules_raw, dict):
        raise InstanceError("expected an object", "$.modules")

    modules: Dict[str, Union[TwistedRep, QSheafP1]] = {}
    if mode == "vector":
        dims = []
        for k, d in enumerate(twists_raw):
            d = _require_int(d, f"$.twists[{k}]")
            if d < 1:
                raise InstanceError("twist dimensions must be >= 1", f"$.twists[{k}]")
            dims.append(d)
        twists: Union[TwistData, Tuple[SplitBundle, ...]] = TwistData(dims)
        for name, value in modules_raw.items():
            modules[name] = _parse_vector_module(field, quiver, twists, value,
                                                 f"$.modules.{name}")
    else:
        bundles = tuple(
            _parse_twist_list(twists_raw[a], f"$.twists[{a}]")
            for a in range(quiver.n_arrows)
        )
        twists = bundles
        for name, value in modules_raw.items():
            modules[name] = _parse_p1_module(field, quiver, bundles, value,
                                             f"$.modules.{name}")
    return Instance(field, quiver, mode, twists, modules)


def loads_instance(text: str) -> Instance:
    """Parse JSON text and load it; json.JSONDecodeError passes through."""
    return load_instance(json.loads(text))


# -- serialisation ------------------------------------------------------------

def _entry_value(field: FieldSpec, x):
    return int(x) if field.is_prime_field else str(x)


def _matrix_value(field: FieldSpec, m: ExactMatrix) -> list:
    return [[_entry_value(field, m[r, c]) for c in range(m.ncols)]
            for r in range(m.nrows)]


def _form_value(field: FieldSpec, f: BinForm):
    if f.degree < 0:
        return None
    return [_entry_value(field, c) for c in f.coeffs]


def document_of_instance(inst: Instance) -> dict:
    """The canonical JSON document of a loaded instance (round-trip inverse)."""
    field = inst.field
    doc: dict = {
        "field": "q" if not field.is_prime_field else {"fp": field.modulus},
        "quiver": {
            "vertices": inst.quiver.n_vertices,
            "arrows": [[t, h] for (t, h) in inst.quiver.arrows],
        },
        "mode": inst.mode,
    }
    if inst.mode == "vector":
        doc["twists"] = list(inst.twists.dims)
        doc["modules"] = {
            name: {
                "dims": list(rep.dims),
                "phi": [_matrix_value(field, m) for m in rep.phi],
            }
            for name, rep in inst.modules.items()
        }
    else:
        doc["twists"] = [list(b.twists) for b in inst.twists]
        doc["modules"] = {
            name: {
                "twists": [list(b.twists) for b in sheaf.vertex_bundles],
                "phi": [
                    [[_form_value(field, sheaf.phi[a].entry(r, s))
                      for s in range(sheaf.phi[a].source.rank)]
                     for r in range(sheaf.phi[a].target.rank)]
                    for a in range(inst.quiver.n_arrows)
                ],
            }
            for name, sheaf in inst.modules.items()
        }
    return doc
