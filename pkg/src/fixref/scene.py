"""Scene documents: named subspaces plus reflector compositions, as JSON.

A scene is a single JSON object::

    {
      "name": "...",                     # optional
      "description": "...",              # optional, ignored by computations
      "ambient": 2,
      "subspaces": [                     # ordered, unique names
        {"name": "U", "vectors": [[1.0, 0.0]]},   # span of the rows
        {"name": "V", "angle": "45 deg"}          # axis angle; ambient 2 only
      ],
      "compositions": [                  # ordered, unique names
        {"name": "U-V", "apply": ["U", "V"]}      # application order: U first
      ]
    }

Angles are numbers (radians) or strings with an optional unit suffix,
"0.5 rad" or "30 deg"; radians by default.  An empty "vectors" list declares
the zero subspace.  A composition entry names the operator obtained by
applying the reflectors of the listed subspaces first-to-last, i.e. the
matrix product runs right-to-left over the list.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from . import plane
from .operators import compose, reflector
from .subspace import Subspace


class SceneError(ValueError):
    """Malformed scene document (syntax or semantics)."""


_ANGLE_RE = re.compile(
    r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)\s*(rad|deg)?\s*$")


def parse_angle(value) -> float:
    """Angle in radians from a number or a '<number> [rad|deg]' string."""
    if isinstance(value, bool):
        raise SceneError(f"cannot interpret {value!r} as an angle")
    if isinstance(value, (int, float)):
        angle = float(value)
    elif isinstance(value, str):
        m = _ANGLE_RE.match(value)
        if not m:
            raise SceneError(
                f"cannot parse angle {value!r}; expected e.g. "
                f"'0.5', '0.5 rad' or '30 deg'")
        angle = float(m.group(1))
        if m.group(2) == "deg":
            angle = math.radians(angle)
    else:
        raise SceneError(f"cannot interpret {value!r} as an angle")
    if not math.isfinite(angle):
        raise SceneError("angle must be finite")
    return angle


@dataclass(frozen=True)
class Scene:
    """A parsed scene: named subspaces and named reflector compositions."""

    name: str
    ambient: int
    subspaces: dict[str, Subspace]
    compositions: dict[str, tuple[str, ...]]
    source: dict  # the validated document, kept for exact re-serialization

    def subspace(self, name: str) -> Subspace:
        try:
            return self.subspaces[name]
        except KeyError:
            known = ", ".join(self.subspaces)
            raise SceneError(
                f"unknown subspace {name!r}; scene declares: {known}") from None

    def composition(self, name: str) -> tuple[str, ...]:
        try:
            return self.compositions[name]
        except KeyError:
            known = ", ".join(self.compositions) or "(none)"
            raise SceneError(
                f"unknown composition {name!r}; scene declares: {known}") from None

    def reflectors(self, composition: str) -> list[np.ndarray]:
        """Reflector matrices of a composition, in application order."""
        return [reflector(self.subspace(nm))
                for nm in self.composition(composition)]

    def composition_matrix(self, composition: str) -> np.ndarray:
        return compose(self.reflectors(composition))

    def operator_notation(self, composition: str) -> str:
        """Right-to-left product notation, last-applied reflector first."""
        return " ".join(f"R_{nm}"
                        for nm in reversed(self.composition(composition)))

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.source, indent=indent)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise SceneError(message)


def scene_from_dict(doc) -> Scene:
    """Validate a decoded scene document and build the Scene."""
    _require(isinstance(doc, dict), "scene document must be a JSON object")
    name = doc.get("name", "scene")
    _require(isinstance(name, str) and bool(name), "scene name must be a nonempty string")

    ambient = doc.get("ambient")
    _require(isinstance(ambient, int) and not isinstance(ambient, bool)
             and ambient >= 1, "ambient must be an integer >= 1")

    decls = doc.get("subspaces")
    _require(isinstance(decls, list) and len(decls) > 0,
             "scene must declare a nonempty 'subspaces' list")
    subspaces: dict[str, Subspace] = {}
    for decl in decls:
        _require(isinstance(decl, dict), "each subspace entry must be an object")
        sub_name = decl.get("name")
        _require(isinstance(sub_name, str) and bool(sub_name),
                 "each subspace needs a nonempty string 'name'")
        _require(sub_name not in subspaces,
                 f"duplicate subspace name {sub_name!r}")
        vectors = decl.get("vectors")
        angle = decl.get("angle")
        _require((vectors is None) != (angle is None),
                 f"subspace {sub_name!r} must give exactly one of "
                 f"'vectors' or 'angle'")
        if angle is not None:
            _require(ambient == 2,
                     f"subspace {sub_name!r}: angle form is only legal in "
                     f"ambient dimension 2 (got {ambient})")
            subspaces[sub_name] = plane.line_subspace(parse_angle(angle))
        else:
            _require(isinstance(vectors, list),
                     f"subspace {sub_name!r}: 'vectors' must be a list")
            rows = []
            for vec in vectors:
                _require(isinstance(vec, list) and len(vec) == ambient,
                         f"subspace {sub_name!r}: each vector must be a list "
                         f"of {ambient} numbers")
                rows.append([float(x) for x in vec])
            try:
                subspaces[sub_name] = Subspace.from_vectors(rows, ambient=ambient)
            except ValueError as exc:
                raise SceneError(f"subspace {sub_name!r}: {exc}") from None

    compositions: dict[str, tuple[str, ...]] = {}
    for decl in doc.get("compositions", []):
        _require(isinstance(decl, dict), "each composition entry must be an object")
        comp_name = decl.get("name")
        _require(isinstance(comp_name, str) and bool(comp_name),
                 "each composition needs a nonempty string 'name'")
        _require(comp_name not in compositions,
                 f"duplicate composition name {comp_name!r}")
        apply = decl.get("apply")
        _require(isinstance(apply, list) and len(apply) > 0,
                 f"composition {comp_name!r} needs a nonempty 'apply' list")
        for ref in apply:
            _require(ref in subspaces,
                     f"composition {comp_name!r} references undeclared "
                     f"subspace {ref!r}")
        compositions[comp_name] = tuple(apply)

    return Scene(name=name, ambient=ambient, subspaces=subspaces,
                 compositions=compositions, source=doc)


def parse_scene(text: str) -> Scene:
    """Parse a scene from JSON text; syntax errors report line and column."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SceneError(
            f"scene parse error at line {exc.lineno}, column {exc.colno}: "
            f"{exc.msg}") from None
    return scene_from_dict(doc)


def builtin_scene_names() -> list[str]:
    """Names of the example scenes shipped with the package."""
    folder = resources.files(__package__) / "scenes"
    return sorted(p.name[:-len(".json")]
                  for p in folder.iterdir() if p.name.endswith(".json"))


def load_builtin_scene(name: str) -> Scene:
    entry = resources.files(__package__) / "scenes" / f"{name}.json"
    if not entry.is_file():
        known = ", ".join(builtin_scene_names())
        raise SceneError(f"no built-in scene {name!r}; available: {known}")
    return parse_scene(entry.read_text(encoding="utf-8"))


def load_scene(path_or_name: str) -> Scene:
    """Load a scene from a file path, or by built-in example name."""
    path = Path(path_or_name)
    if path.is_file():
        return parse_scene(path.read_text(encoding="utf-8"))
    if re.fullmatch(r"[\w-]+", str(path_or_name)):
        return load_builtin_scene(str(path_or_name))
    raise SceneError(f"scene file not found: {path_or_name}")
