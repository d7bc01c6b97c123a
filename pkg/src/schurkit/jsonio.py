"""JSON wire formats for spaces, functions, kernels, coverings, and frames.

Loading validates shapes and positivity and returns the corresponding
library objects; dumping inverts it. `dumps_json` is a hand-rolled
serializer emitting floats with 17 significant digits (round-trip exact in
double precision) and infinities as the string "inf"; byte-identical output
for identical data is part of the contract.
"""

from __future__ import annotations

import hashlib
import math

import numpy as np

from .coorbit import FiniteFrame, gabor_frame
from .coverings import RectCovering
from .kernel_algebra import WeightGrid
from .measure import ProductSpace, Space
from .mixed_norm import GridFunction
from .operators import Kernel

__all__ = [
    "load_space",
    "load_product",
    "load_grid_function",
    "load_kernel",
    "load_weight_grid",
    "load_covering",
    "load_frame",
    "dump_space",
    "dump_product",
    "dump_grid_function",
    "dump_kernel",
    "dumps_json",
    "file_digest",
]


def _point(p):
    # JSON has no tuples; lists used as point ids become tuples (hashable)
    return tuple(_point(q) for q in p) if isinstance(p, list) else p


def load_space(obj) -> Space:
    if not isinstance(obj, dict) or "points" not in obj or "masses" not in obj:
        raise ValueError("space JSON needs 'points' and 'masses'")
    return Space([_point(p) for p in obj["points"]], [float(m) for m in obj["masses"]])


def load_product(obj) -> ProductSpace:
    if not isinstance(obj, dict) or "factor1" not in obj or "factor2" not in obj:
        raise ValueError("product-space JSON needs 'factor1' and 'factor2'")
    return ProductSpace(load_space(obj["factor1"]), load_space(obj["factor2"]))


def _complex_array(obj, what: str) -> np.ndarray:
    if "re" not in obj:
        raise ValueError(f"{what} JSON needs 're'")
    re = np.asarray(obj["re"], dtype=float)
    if "im" in obj:
        return re + 1j * np.asarray(obj["im"], dtype=float)
    return re


def load_grid_function(obj) -> GridFunction:
    if not isinstance(obj, dict) or "space" not in obj:
        raise ValueError("function JSON needs 'space'")
    return GridFunction(load_product(obj["space"]), _complex_array(obj, "function"))


def load_kernel(obj) -> Kernel:
    if not isinstance(obj, dict) or "X" not in obj or "Y" not in obj:
        raise ValueError("kernel JSON needs 'X' and 'Y'")
    return Kernel(load_product(obj["X"]), load_product(obj["Y"]), _complex_array(obj, "kernel"))


def load_weight_grid(obj) -> WeightGrid:
    if not isinstance(obj, dict) or obj.get("positive") is not True:
        raise ValueError("weight-grid JSON must set \"positive\": true")
    return WeightGrid(load_product(obj["X"]), load_product(obj["Y"]), _complex_array(obj, "weight"))


def load_covering(obj, space: ProductSpace) -> RectCovering:
    if not isinstance(obj, dict) or "patches" not in obj:
        raise ValueError("covering JSON needs 'patches'")
    patches = []
    for entry in obj["patches"]:
        if "V" not in entry or "W" not in entry:
            raise ValueError("each patch needs 'V' and 'W'")
        patches.append(([_point(p) for p in entry["V"]], [_point(p) for p in entry["W"]]))
    return RectCovering(space, patches)


def _window_entry(x) -> complex:
    if isinstance(x, list):
        if len(x) != 2:
            raise ValueError("complex window entries are [re, im] pairs")
        return complex(float(x[0]), float(x[1]))
    return complex(float(x), 0.0)


def load_frame(obj) -> FiniteFrame:
    if not isinstance(obj, dict) or obj.get("type") != "gabor":
        raise ValueError("frame JSON must have \"type\": \"gabor\"")
    N = obj.get("N")
    if not isinstance(N, int) or N < 1:
        raise ValueError("frame JSON needs positive integer 'N'")
    window = [_window_entry(x) for x in obj.get("window", [])]
    return gabor_frame(N, window)


# ---------------------------------------------------------------------------
# dumping
# ---------------------------------------------------------------------------


def _plain(p):
    return p.item() if isinstance(p, np.generic) else p


def dump_space(space: Space) -> dict:
    return {
        "points": [_plain(p) for p in space.points],
        "masses": [float(m) for m in space.masses],
    }


def dump_product(space: ProductSpace) -> dict:
    return {"factor1": dump_space(space.factor1), "factor2": dump_space(space.factor2)}


def dump_grid_function(f: GridFunction) -> dict:
    out = {"space": dump_product(f.space), "re": np.real(f.values).tolist()}
    if not f.is_real:
        out["im"] = np.imag(f.values).tolist()
    return out


def dump_kernel(K: Kernel) -> dict:
    out = {"X": dump_product(K.X), "Y": dump_product(K.Y), "re": np.real(K.values).tolist()}
    if not K.is_real:
        out["im"] = np.imag(K.values).tolist()
    if isinstance(K, WeightGrid):
        out["positive"] = True
    return out


def _format_number(x: float) -> str:
    if math.isinf(x):
        return '"inf"' if x > 0 else '"-inf"'
    if math.isnan(x):
        raise ValueError("refusing to serialize NaN")
    return format(x, ".17g")


def _escape(s: str) -> str:
    out = []
    for ch in s:
        if ch in ('"', "\\"):
            out.append("\\" + ch)
        elif ord(ch) < 0x20:
            out.append(f"\\u{ord(ch):04x}")
        else:
            out.append(ch)
    return "".join(out)


def _emit(obj, indent: int, pieces: list) -> None:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            pieces.append("{}")
            return
        pieces.append("{\n")
        for i, (k, v) in enumerate(obj.items()):
            pieces.append(f'{pad}  "{_escape(str(k))}": ')
            _emit(v, indent + 1, pieces)
            pieces.append(",\n" if i + 1 < len(obj) else "\n")
        pieces.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        seq = list(obj)
        if not seq:
            pieces.append("[]")
            return
        pieces.append("[")
        for i, v in enumerate(seq):
            _emit(v, indent, pieces)
            if i + 1 < len(seq):
                pieces.append(", ")
        pieces.append("]")
    elif isinstance(obj, bool) or isinstance(obj, np.bool_):
        pieces.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        pieces.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        pieces.append(_format_number(float(obj)))
    elif isinstance(obj, complex):
        _emit({"re": obj.real, "im": obj.imag}, indent, pieces)
    elif isinstance(obj, str):
        pieces.append(f'"{_escape(obj)}"')
    elif obj is None:
        pieces.append("null")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_json(obj) -> str:
    """Deterministic JSON text: 17-significant-digit floats, "inf" strings."""
    pieces: list = []
    _emit(obj, 0, pieces)
    return "".join(pieces)


def file_digest(path: str) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()
