"""File formats for algebras, elements, maps, states, and reports.

All payloads are UTF-8 JSON:

  Algebra  {"blocks": [n1, ...]}
  Element  {"algebra": Algebra, "blocks": [[[re, im], ...], ...]}
           one flat row-major list of [re, im] pairs per block
  LinMap   {"domain": Algebra, "codomain": Algebra, "images": [Element, ...]}
           images in canonical basis order: blocks ascending, then
           row-major (i, j) within each block
  State    {"algebra": Algebra, "density": Element}

These orderings are normative. Elements of tensor products with an opposite
algebra are stored with the second factor transposed (see the README).

Numbers are written in scientific notation with 17 significant digits and
keys in a fixed order, so identical inputs serialize to identical bytes.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .algebra import Algebra, Element
from .entropy import State
from .errors import ParseError
from .linmap import LinMap


def format_float(x: float) -> str:
    x = float(x)
    if x == 0.0:  # normalize -0.0 so equal values serialize identically
        x = 0.0
    return f"{x:.16e}"


def defect_string(x: float) -> str:
    """Defects are rounded to 1e-12 before formatting to keep output
    diff-stable across platforms."""
    return format_float(round(float(x), 12))


def dumps(obj: Any, indent: int = 2) -> str:
    """Deterministic JSON writer: insertion-ordered keys, floats in
    scientific notation with 17 significant digits."""

    def render(node: Any, depth: int) -> str:
        pad = " " * (indent * depth)
        inner = " " * (indent * (depth + 1))
        if isinstance(node, dict):
            if not node:
                return "{}"
            items = [
                f"{inner}{json.dumps(str(k))}: {render(v, depth + 1)}"
                for k, v in node.items()
            ]
            return "{\n" + ",\n".join(items) + "\n" + pad + "}"
        if isinstance(node, (list, tuple)):
            if not node:
                return "[]"
            flat = all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in node)
            parts = [render(v, depth + 1) for v in node]
            if flat and sum(len(p) for p in parts) < 60:
                return "[" + ", ".join(parts) + "]"
            return "[\n" + ",\n".join(inner + p for p in parts) + "\n" + pad + "]"
        if isinstance(node, bool) or node is None:
            return json.dumps(node)
        if isinstance(node, (int, np.integer)):
            return str(int(node))
        if isinstance(node, (float, np.floating)):
            return format_float(float(node))
        if isinstance(node, str):
            return json.dumps(node)
        raise TypeError(f"cannot serialize {type(node)!r}")

    return render(obj, 0) + "\n"


# -- object <-> plain-JSON conversion -------------------------------------------


def algebra_to_obj(a: Algebra) -> dict:
    return {"blocks": list(a.blocks)}


def algebra_from_obj(obj: Any) -> Algebra:
    if not isinstance(obj, dict) or "blocks" not in obj:
        raise ParseError("algebra requires a 'blocks' field")
    blocks = obj["blocks"]
    if (
        not isinstance(blocks, list)
        or not blocks
        or not all(isinstance(n, int) and n >= 1 for n in blocks)
    ):
        raise ParseError(f"malformed blocks field: {blocks!r}")
    return Algebra(tuple(blocks))


def element_to_obj(x: Element) -> dict:
    blocks = []
    for b in x.blocks:
        flat = b.ravel()
        blocks.append([[float(z.real), float(z.imag)] for z in flat])
    return {"algebra": algebra_to_obj(x.algebra), "blocks": blocks}


def element_from_obj(obj: Any) -> Element:
    if not isinstance(obj, dict) or "algebra" not in obj or "blocks" not in obj:
        raise ParseError("element requires 'algebra' and 'blocks' fields")
    algebra = algebra_from_obj(obj["algebra"])
    raw = obj["blocks"]
    if not isinstance(raw, list) or len(raw) != algebra.num_blocks:
        raise ParseError(
            f"expected {algebra.num_blocks} element blocks, got {len(raw) if isinstance(raw, list) else type(raw)}"
        )
    blocks = []
    for n, entries in zip(algebra.blocks, raw):
        if not isinstance(entries, list) or len(entries) != n * n:
            raise ParseError(f"block of size {n} needs {n * n} entries")
        try:
            flat = np.array(
                [complex(float(p[0]), float(p[1])) for p in entries],
                dtype=np.complex128,
            )
        except (TypeError, IndexError, ValueError) as exc:
            raise ParseError(f"malformed [re, im] entry: {exc}") from exc
        blocks.append(flat.reshape(n, n))
    return Element(algebra, blocks)


def linmap_to_obj(phi: LinMap) -> dict:
    return {
        "domain": algebra_to_obj(phi.domain),
        "codomain": algebra_to_obj(phi.codomain),
        "images": [element_to_obj(img) for img in phi.images()],
    }


def linmap_from_obj(obj: Any) -> LinMap:
    if not isinstance(obj, dict) or not {"domain", "codomain", "images"} <= set(obj):
        raise ParseError("map requires 'domain', 'codomain' and 'images' fields")
    domain = algebra_from_obj(obj["domain"])
    codomain = algebra_from_obj(obj["codomain"])
    raw = obj["images"]
    if not isinstance(raw, list) or len(raw) != domain.vec_dim:
        raise ParseError(
            f"expected {domain.vec_dim} images, got {len(raw) if isinstance(raw, list) else type(raw)}"
        )
    images = [element_from_obj(o) for o in raw]
    for img in images:
        if img.algebra != codomain:
            raise ParseError("image algebra does not match the codomain")
    return LinMap.from_images(domain, codomain, images)


def state_to_obj(mu: State) -> dict:
    return {
        "algebra": algebra_to_obj(mu.algebra),
        "density": element_to_obj(mu.density),
    }


def state_from_obj(obj: Any) -> State:
    from .entropy import state_from_density

    if not isinstance(obj, dict) or not {"algebra", "density"} <= set(obj):
        raise ParseError("state requires 'algebra' and 'density' fields")
    algebra = algebra_from_obj(obj["algebra"])
    density = element_from_obj(obj["density"])
    if density.algebra != algebra:
        raise ParseError("density algebra does not match the state algebra")
    return state_from_density(algebra, density)


# -- file helpers ----------------------------------------------------------------


def _load_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {path}: {exc}") from exc


def load_map(path: str) -> LinMap:
    return linmap_from_obj(_load_json(path))


def load_element(path: str) -> Element:
    return element_from_obj(_load_json(path))


def load_state(path: str) -> State:
    return state_from_obj(_load_json(path))


def save(path: str, obj: Any) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))
