"""Plain-text scene files: named points and primitives in one dimension.

Grammar, one statement per line, ``#`` starts a comment::

    dim <2|3>                                   (first statement)
    point <name> <x> <y> [<z>]
    line <name> <pt> <pt>
    circle <name> <pt> <pt> <pt>
    circle <name> center <x> <y> radius <r>     (2D)
    plane <name> <pt> <pt> <pt>                 (3D)
    sphere <name> <pt> <pt> <pt> <pt>           (3D)
    sphere <name> center <x> <y> <z> radius <r> (3D)
    versor <name> translate <dx> <dy> [<dz>]
    versor <name> rotate <plane> <angle> [about <pt>]

Names must be defined before they are referenced.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np

from .algebra import Multivector
from .conformal import embed
from .errors import GeometryError
from .primitives import (
    circle_through,
    line_through,
    plane_through,
    round_from_center_radius,
    sphere_through,
)
from .transforms import plane_bivector, rotor_about_point, rotor_euclidean, translator

SYNTAX = "E100"
BAD_DIM = "E101"
UNKNOWN_NAME = "E102"
DIM_MISMATCH = "E103"
DEGENERATE = "E104"
DUPLICATE = "E105"
WRONG_KIND = "E106"

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_TOKEN = re.compile(r"\S+")


class SceneError(Exception):
    def __init__(self, code: str, message: str, line: int | None = None, col: int | None = None):
        self.code = code
        self.line = line
        self.col = col
        where = f"line {line}, col {col}: " if line is not None else ""
        super().__init__(f"{code} {where}{message}")


@dataclass(frozen=True)
class Entity:
    kind: str                 # point | line | circle | plane | sphere | versor
    value: Multivector
    anchors: tuple[np.ndarray, ...] = ()   # defining points, in order


@dataclass
class Scene:
    dim: int
    entities: dict[str, Entity] = field(default_factory=dict)

    def __getitem__(self, name: str) -> Entity:
        return self.entities[name]


def parse_angle(text: str) -> float:
    """Radians, or degrees with a ``deg`` suffix (``90deg``)."""
    if text.endswith("deg"):
        return math.radians(float(text[:-3]))
    return float(text)


class _Parser:
    def __init__(self, text: str):
        self.lines = text.splitlines()
        self.scene: Scene | None = None

    def error(self, code, message, lineno, col):
        raise SceneError(code, message, lineno, col)

    def number(self, tok, lineno):
        word, col = tok
        try:
            value = float(word)
        except ValueError:
            self.error(SYNTAX, f"expected a number, got {word!r}", lineno, col)
        if not math.isfinite(value):
            self.error(SYNTAX, f"non-finite number {word!r}", lineno, col)
        return value

    def ref(self, tok, lineno, kinds=("point",)):
        word, col = tok
        ent = self.scene.entities.get(word)
        if ent is None:
            self.error(UNKNOWN_NAME, f"unknown name {word!r}", lineno, col)
        if ent.kind not in kinds:
            self.error(WRONG_KIND, f"{word!r} is a {ent.kind}, expected {' or '.join(kinds)}",
                       lineno, col)
        return ent

    def coords(self, toks, lineno, at_col):
        if len(toks) != self.scene.dim:
            self.error(DIM_MISMATCH, f"expected {self.scene.dim} coordinates in a "
                       f"{self.scene.dim}D scene, got {len(toks)}", lineno, at_col)
        return np.array([self.number(t, lineno) for t in toks])

    def parse(self) -> Scene:
        for lineno, raw in enumerate(self.lines, start=1):
            body = raw.split("#", 1)[0]
            toks = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(body)]
            if toks:
                self.statement(toks, lineno)
        if self.scene is None:
            raise SceneError(BAD_DIM, "missing 'dim' statement")
        return self.scene

    def statement(self, toks, lineno):
        keyword, col = toks[0]
        if self.scene is None:
            if keyword != "dim":
                self.error(BAD_DIM, "the first statement must be 'dim <2|3>'", lineno, col)
            if len(toks) != 2 or toks[1][0] not in ("2", "3"):
                self.error(BAD_DIM, "expected 'dim 2' or 'dim 3'", lineno, col)
            self.scene = Scene(int(toks[1][0]))
            return
        if keyword == "dim":
            self.error(BAD_DIM, "'dim' may only appear once", lineno, col)
        handler = getattr(self, f"stmt_{keyword}", None)
        if handler is None:
            self.error(SYNTAX, f"unknown statement {keyword!r}", lineno, col)
        if len(toks) < 2:
            self.error(SYNTAX, f"'{keyword}' needs a name", lineno, col + len(keyword))
        name, ncol = toks[1]
        if not _NAME.match(name):
            self.error(SYNTAX, f"invalid name {name!r}", lineno, ncol)
        if name in self.scene.entities:
            self.error(DUPLICATE, f"name {name!r} is already defined", lineno, ncol)
        try:
            entity = handler(toks[2:], lineno, toks)
        except GeometryError as exc:
            self.error(DEGENERATE, f"degenerate {keyword} {name!r}: {exc}", lineno, col)
        self.scene.entities[name] = entity

    def arity(self, args, counts, lineno, toks):
        if len(args) not in counts:
            want = " or ".join(str(c) for c in counts)
            end = toks[-1][1] + len(toks[-1][0])
            self.error(SYNTAX, f"'{toks[0][0]}' takes {want} arguments after the name, "
                       f"got {len(args)}", lineno, end)

    def points(self, args, lineno):
        ents = [self.ref(t, lineno) for t in args]
        return [e.value for e in ents], tuple(e.anchors[0] for e in ents)

    def require_3d(self, toks, lineno):
        if self.scene.dim != 3:
            self.error(DIM_MISMATCH, f"'{toks[0][0]}' needs a 3D scene", lineno, toks[0][1])

    def stmt_point(self, args, lineno, toks):
        self.arity(args, (2, 3), lineno, toks)
        x = self.coords(args, lineno, toks[0][1])
        return Entity("point", embed(x), (x,))

    def stmt_line(self, args, lineno, toks):
        self.arity(args, (2,), lineno, toks)
        pts, anchors = self.points(args, lineno)
        return Entity("line", line_through(*pts), anchors)

    def _center_radius(self, args, lineno, toks):
        d = self.scene.dim
        self.arity(args, (d + 3,), lineno, toks)
        if args[0][0] != "center" or args[d + 1][0] != "radius":
            self.error(SYNTAX, "expected 'center <coords> radius <r>'", lineno, args[0][1])
        c = self.coords(args[1:d + 1], lineno, args[0][1])
        r = self.number(args[d + 2], lineno)
        return round_from_center_radius(embed(c), r), (c,)

    def stmt_circle(self, args, lineno, toks):
        if args and args[0][0] == "center":
            if self.scene.dim != 2:
                self.error(DIM_MISMATCH, "center/radius circles are 2D only", lineno, args[0][1])
            blade, anchors = self._center_radius(args, lineno, toks)
            return Entity("circle", blade, anchors)
        self.arity(args, (3,), lineno, toks)
        pts, anchors = self.points(args, lineno)
        return Entity("circle", circle_through(*pts), anchors)

    def stmt_plane(self, args, lineno, toks):
        self.require_3d(toks, lineno)
        self.arity(args, (3,), lineno, toks)
        pts, anchors = self.points(args, lineno)
        return Entity("plane", plane_through(*pts), anchors)

    def stmt_sphere(self, args, lineno, toks):
        self.require_3d(toks, lineno)
        if args and args[0][0] == "center":
            blade, anchors = self._center_radius(args, lineno, toks)
            return Entity("sphere", blade, anchors)
        self.arity(args, (4,), lineno, toks)
        pts, anchors = self.points(args, lineno)
        return Entity("sphere", sphere_through(*pts), anchors)

    def stmt_versor(self, args, lineno, toks):
        if not args:
            self.error(SYNTAX, "expected 'translate' or 'rotate'", lineno, toks[1][1])
        action, col = args[0]
        if action == "translate":
            a = self.coords(args[1:], lineno, col)
            return Entity("versor", translator(a))
        if action == "rotate":
            if len(args) not in (3, 5) or (len(args) == 5 and args[3][0] != "about"):
                self.error(SYNTAX, "expected 'rotate <plane> <angle> [about <pt>]'", lineno, col)
            try:
                angle = parse_angle(args[2][0])
            except ValueError:
                self.error(SYNTAX, f"expected an angle, got {args[2][0]!r}", lineno, args[2][1])
            try:
                plane = plane_bivector(args[1][0], self.scene.dim)
            except GeometryError as exc:
                self.error(SYNTAX, str(exc), lineno, args[1][1])
            rotor = rotor_euclidean(plane, angle)
            if len(args) == 5:
                center = self.ref(args[4], lineno)
                rotor = rotor_about_point(rotor, center.anchors[0])
            return Entity("versor", rotor)
        self.error(SYNTAX, f"unknown versor kind {action!r}", lineno, col)


def parse_scene(text: str) -> Scene:
    """Parse scene text into a fully resolved :class:`Scene`.

    Raises :class:`SceneError` carrying a diagnostic code, line and column.
    """
    return _Parser(text).parse()
