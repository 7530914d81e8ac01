"""JSON reading and writing for algebra, Laurent and graph specs.

Algebra specs use 1-based indices throughout::

    {"format": "frobtqft-algebra/1", "name": ..., "dim": r, "basis": [...],
     "structure_constants": [[[i, j, k], "p/q"], ...],
     "unit": ["p/q", ...], "counit": [...], "form": [[[i, j], "p/q"], ...],
     "coproduct": [[[v, a, b], "p/q"], ...], "mode": "frobenius"}

Only ``structure_constants`` and ``dim`` (or ``basis``) are required.
"""
from __future__ import annotations

import json
from fractions import Fraction

from .algebra import FROBENIUS, NEARLY, AlgebraSpec
from .frobenius import FrobeniusPackage
from .scalars import format_scalar, to_scalar
from .tensor import MultilinearMap

ALGEBRA_FORMAT = "frobtqft-algebra/1"
LAURENT_FORMAT = "frobtqft-laurent/1"


class SpecError(ValueError):
    """Malformed spec; ``line``/``column`` are set for JSON syntax errors."""

    def __init__(self, message, line=None, column=None):
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column


def loads(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from None


def load_json(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def _flat_enough(x):
    if isinstance(x, dict):
        return False
    if isinstance(x, list):
        return all(not isinstance(y, (list, dict)) or
                   (isinstance(y, list) and all(not isinstance(z, (list, dict)) for z in y)) for y in x)
    return True


def _dump(obj, indent):
    pad = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {_dump(obj[k], indent + 1)}"
                 for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(obj, list) and obj and not _flat_enough(obj):
        items = [pad + _dump(x, indent + 1) for x in obj]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    return json.dumps(obj, ensure_ascii=False, separators=(", ", ": "))


def dumps(obj):
    """Canonical JSON: sorted keys, one sparse entry or short vector per line."""
    return _dump(obj, 0) + "\n"


def _scalar(x, where):
    try:
        return to_scalar(x)
    except (TypeError, ValueError) as exc:
        raise SpecError(f"{where}: {exc}") from None


def _vector(obj, r, where):
    if not isinstance(obj, list):
        raise SpecError(f"{where} must be a list")
    if len(obj) == r and all(not isinstance(x, list) for x in obj):
        return tuple(_scalar(x, where) for x in obj)
    # sparse [[i], "p/q"] pairs
    return _sparse(obj, r, 1, where)[0]


def _sparse(obj, r, rank, where):
    if not isinstance(obj, list):
        raise SpecError(f"{where} must be a list of [index, value] pairs")
    flat = {}
    for entry in obj:
        if not (isinstance(entry, list) and len(entry) == 2 and isinstance(entry[0], list)):
            raise SpecError(f"{where}: entry {entry!r} is not an [index, value] pair")
        index, value = entry
        if len(index) != rank or not all(isinstance(i, int) and not isinstance(i, bool) for i in index):
            raise SpecError(f"{where}: index {index} must be {rank} integers")
        if any(not 1 <= i <= r for i in index):
            raise SpecError(f"{where}: index {index} out of range 1..{r}")
        key = tuple(i - 1 for i in index)
        if key in flat:
            raise SpecError(f"{where}: duplicate index {index}")
        flat[key] = _scalar(value, where)
    if rank == 1:
        return (tuple(flat.get((i,), Fraction(0)) for i in range(r)),)
    return flat


def algebra_from_json(obj) -> AlgebraSpec:
    if not isinstance(obj, dict):
        raise SpecError("algebra spec must be a JSON object")
    if obj.get("kind", "algebra") != "algebra":
        raise SpecError(f"expected an algebra spec, got kind {obj.get('kind')!r}")
    if "structure_constants" not in obj:
        raise SpecError("missing structure_constants")
    basis = obj.get("basis")
    r = obj.get("dim", len(basis) if isinstance(basis, list) else None)
    if not isinstance(r, int) or isinstance(r, bool) or r < 1:
        raise SpecError("dim must be a positive integer")
    if basis is None:
        basis = [f"e{i + 1}" for i in range(r)]
    if len(basis) != r:
        raise SpecError(f"basis has {len(basis)} labels but dim is {r}")
    constants = _sparse(obj["structure_constants"], r, 3, "structure_constants")
    product = MultilinearMap.from_sparse(r, 2, 1, constants.items())
    kw = {}
    for key in ("unit", "counit"):
        if obj.get(key) is not None:
            kw[key] = _vector(obj[key], r, key)
    if obj.get("form") is not None:
        form = obj["form"]
        if form and all(isinstance(row, list) and len(row) == r and not any(isinstance(x, list) for x in row)
                        for row in form) and len(form) == r:
            kw["form"] = tuple(tuple(_scalar(x, "form") for x in row) for row in form)
        else:
            flat = _sparse(form, r, 2, "form")
            kw["form"] = tuple(tuple(flat.get((i, j), Fraction(0)) for j in range(r)) for i in range(r))
    if obj.get("coproduct") is not None:
        kw["coproduct"] = MultilinearMap.from_sparse(
            r, 1, 2, _sparse(obj["coproduct"], r, 3, "coproduct").items())
    mode = obj.get("mode", FROBENIUS)
    if mode not in (FROBENIUS, NEARLY):
        raise SpecError(f"unknown mode {mode!r}")
    try:
        return AlgebraSpec(str(obj.get("name", "algebra")), tuple(str(b) for b in basis), product,
                           mode=mode, **kw)
    except ValueError as exc:
        raise SpecError(str(exc)) from None


def _fmt_vec(v):
    return [format_scalar(x) for x in v]


def _fmt_matrix_sparse(rows):
    return [[[i + 1, j + 1], format_scalar(x)] for i, row in enumerate(rows)
            for j, x in enumerate(row) if x]


def algebra_to_json(spec: AlgebraSpec):
    out = {"format": ALGEBRA_FORMAT, "kind": "algebra", "name": spec.name, "dim": spec.dim,
           "basis": list(spec.basis), "mode": spec.mode,
           "structure_constants": spec.product.to_sparse(one_based=True)}
    if spec.unit is not None:
        out["unit"] = _fmt_vec(spec.unit)
    if spec.counit is not None:
        out["counit"] = _fmt_vec(spec.counit)
    if spec.form is not None:
        out["form"] = _fmt_matrix_sparse(spec.form)
    if spec.coproduct is not None:
        out["coproduct"] = spec.coproduct.to_sparse(one_based=True)
    return out


def package_to_json(pkg: FrobeniusPackage, inverse_euler=None):
    """Derived structures: η, η⁻¹, ε, δ, e, E and optionally e⁻¹."""
    out = {"name": pkg.name, "dim": pkg.dim, "basis": list(pkg.spec.basis),
           "commutative": pkg.commutative, "nondegenerate": pkg.nondegenerate,
           "form": _fmt_matrix_sparse(pkg.form),
           "coproduct": pkg.coproduct.to_sparse(one_based=True),
           "euler_map": pkg.euler_map.to_sparse(one_based=True)}
    if pkg.form_inverse is not None:
        out["form_inverse"] = _fmt_matrix_sparse(pkg.form_inverse)
    if pkg.counit is not None:
        out["counit"] = _fmt_vec(pkg.counit)
    if pkg.unit is not None:
        out["unit"] = _fmt_vec(pkg.unit)
        out["euler_element"] = _fmt_vec(pkg.euler_element)
    if inverse_euler is not None:
        out["euler_element_inverse"] = _fmt_vec(inverse_euler)
    return out


def laurent_spec(k_weights, name=None):
    """Laurent spec for the coproduct ``Σ_k w_k δ_k``."""
    weights = {int(k): to_scalar(w) for k, w in k_weights.items()}
    label = name or "laurent:" + ",".join(str(k) for k in sorted(weights))
    return {"format": LAURENT_FORMAT, "kind": "laurent", "name": label,
            "coproduct": {str(k): format_scalar(w) for k, w in sorted(weights.items())}}


def laurent_weights(obj):
    if obj.get("kind") != "laurent":
        raise SpecError("not a Laurent spec")
    cop = obj.get("coproduct")
    if not isinstance(cop, dict) or not cop:
        raise SpecError("Laurent spec needs a nonempty coproduct map k -> weight")
    try:
        return {int(k): _scalar(w, "coproduct") for k, w in cop.items()}
    except ValueError:
        raise SpecError("Laurent coproduct keys must be integers") from None


def read_spec(path):
    """Return ``("algebra", AlgebraSpec)`` or ``("laurent", weights)``."""
    obj = load_json(path)
    if isinstance(obj, dict) and obj.get("kind") == "laurent":
        return "laurent", laurent_weights(obj)
    return "algebra", algebra_from_json(obj)
