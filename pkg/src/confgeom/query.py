"""Query verbs evaluated against a parsed scene.

Every query returns a :class:`QueryResult` holding the printed line and the
same data as a JSON-ready dict.  Scalars print with 9 significant digits,
coordinates with up to 9 significant digits and no trailing zeros.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import Multivector
from .conformal import distance, embed, extract_point, space
from .errors import GeometryError
from .meet import MeetKind, MeetOutcome, meet
from .primitives import (
    DEFAULT_EPS,
    angle_between_lines,
    center_radius,
    circle_through,
    grade_of,
    is_flat,
    line_data,
    line_through,
    planarity,
    plane_data,
    sphere_through,
    straightness,
)
from .scene import Entity, Scene, parse_angle
from .transforms import (
    apply_versor,
    plane_bivector,
    reflect_in_flat_or_sphere,
    rotor_about_point,
    rotor_euclidean,
    tangent_plane,
    translator,
)

# Coordinates smaller than this print as 0 so round-off never shows as 1e-17.
COORD_SNAP = 1e-12


class QueryError(Exception):
    """Malformed query: unknown verb or name, wrong arguments."""


@dataclass(frozen=True)
class QueryResult:
    text: str
    data: dict


def fmt_scalar(x: float) -> str:
    x = float(x) + 0.0
    return f"{x:#.9g}"


def _coord(c: float) -> float:
    c = float(c)
    return 0.0 if abs(c) < COORD_SNAP else c


def fmt_point(p) -> str:
    return "(" + ",".join(f"{_coord(c):.9g}" for c in p) + ")"


def _plist(p) -> list[float]:
    return [_coord(c) for c in p]


# -- object descriptions ---------------------------------------------------

def describe(value: Multivector) -> tuple[str, dict]:
    """Printable form of a point, line, circle, plane or sphere blade."""
    sp = space(value.algebra.n - 2)
    g = grade_of(value)
    if g == 1:
        p = extract_point(value, eps=1e-6)
        return f"point: {fmt_point(p)}", {"kind": "point", "point": _plist(p)}
    if g == 3 or (g == 4 and sp.dim == 3):
        hyper = g == sp.dim + 1
        if is_flat(value):
            if hyper and sp.dim == 3:
                return _describe_plane(value)
            ld = line_data(value)
            return (f"line: point {fmt_point(ld.point)} direction {fmt_point(ld.direction)}",
                    {"kind": "line", "point": _plist(ld.point), "direction": _plist(ld.direction)})
        cr = center_radius(value)
        kind = "sphere" if g == 4 else "circle"
        return (f"{kind}: center {fmt_point(cr.center)} radius {fmt_scalar(cr.radius)}",
                {"kind": kind, "center": _plist(cr.center), "radius": cr.radius})
    raise GeometryError(f"cannot describe a grade-{g} blade")


def _describe_plane(value: Multivector, outward_from=None) -> tuple[str, dict]:
    pd = plane_data(value)
    normal, offset = pd.normal, pd.offset
    if outward_from is not None:
        flip = offset - float(np.dot(normal, outward_from)) < 0
    else:
        nz = [c for c in normal if abs(c) > COORD_SNAP]
        flip = offset < 0 or (offset == 0 and nz and nz[0] < 0)
    if flip:
        normal, offset = -normal, -offset
    return (f"plane: normal {fmt_point(normal)} offset {fmt_scalar(offset)}",
            {"kind": "plane", "normal": _plist(normal), "offset": offset})


def _describe_meet(m: MeetOutcome) -> tuple[str, dict]:
    data = {"kind": m.kind.value}
    if m.kind is MeetKind.EMPTY:
        return "empty", data
    if m.kind is MeetKind.CIRCLE:
        data.update(center=_plist(m.circle.center), radius=m.circle.radius)
        return f"circle: center {fmt_point(m.circle.center)} radius {fmt_scalar(m.circle.radius)}", data
    if m.kind is MeetKind.LINE:
        data.update(point=_plist(m.line.point), direction=_plist(m.line.direction))
        return f"line: point {fmt_point(m.line.point)} direction {fmt_point(m.line.direction)}", data
    # orientation decides the decoded order, so print in a fixed one instead
    points = sorted((_plist(p) for p in m.points), reverse=True)
    parts = [fmt_point(p) for p in points] + ["inf"] * m.at_infinity
    data.update(points=points, at_infinity=m.at_infinity)
    return f"{m.kind.value}: " + " ".join(parts), data


# -- verbs -----------------------------------------------------------------

class _Runner:
    def __init__(self, scene: Scene, eps: float):
        self.scene = scene
        self.eps = eps

    def entity(self, name: str, kinds=None) -> Entity:
        ent = self.scene.entities.get(name)
        if ent is None:
            raise QueryError(f"unknown name {name!r}")
        if kinds is not None and ent.kind not in kinds:
            raise QueryError(f"{name!r} is a {ent.kind}, expected {' or '.join(kinds)}")
        return ent

    def points(self, names):
        return [self.entity(n, ("point",)).value for n in names]

    def number(self, text: str) -> float:
        try:
            value = float(text)
        except ValueError:
            raise QueryError(f"expected a number, got {text!r}") from None
        if not math.isfinite(value):
            raise QueryError(f"non-finite number {text!r}")
        return value

    def verb_dist(self, args):
        _arity(args, 2)
        x, y = self.points(args)
        d = distance(x, y)
        return fmt_scalar(d), {"distance": d}

    def verb_circum(self, args):
        _arity(args, 3, 4)
        pts = self.points(args)
        blade = circle_through(*pts) if len(pts) == 3 else sphere_through(*pts)
        return describe(blade)

    def verb_intersect(self, args):
        _arity(args, 2)
        a, b = (self.entity(n, _PRIMITIVES) for n in args)
        return _describe_meet(meet(a.value, b.value))

    def verb_reflect(self, args):
        _arity(args, 2)
        obj = self.entity(args[0], ("line", "circle"))
        mirror = self.entity(args[1], _MIRRORS[self.scene.dim])
        return describe(reflect_in_flat_or_sphere(obj.value, mirror.value))

    def verb_tangent(self, args):
        _arity(args, 2)
        s = self.entity(args[0], _MIRRORS[self.scene.dim])
        x = self.entity(args[1], ("point",))
        if is_flat(s.value):
            raise GeometryError(f"{args[0]!r} is flat; its tangent is itself")
        t = tangent_plane(s.value, x.value)
        if self.scene.dim == 3:
            return _describe_plane(t, outward_from=center_radius(s.value).center)
        return describe(t)

    def verb_angle(self, args):
        _arity(args, 2)
        l1, l2 = (self.entity(n, ("line", "circle")).value for n in args)
        theta = angle_between_lines(l1, l2)
        return fmt_scalar(theta), {"angle": theta}

    def _measure(self, args, npts, build, measure, label):
        _arity(args, npts, npts + 1)
        eps = self.number(args[npts]) if len(args) > npts else self.eps
        value = measure(build(*self.points(args[:npts])))
        verdict = value < eps
        text = f"{'true' if verdict else 'false'} ({label} {fmt_scalar(value)})"
        return text, {"result": verdict, label: value, "eps": eps}

    def verb_collinear(self, args):
        return self._measure(args, 3, circle_through, straightness, "straightness")

    def verb_coplanar(self, args):
        if self.scene.dim != 3:
            raise QueryError("coplanar needs a 3D scene")
        return self._measure(args, 4, sphere_through, planarity, "planarity")

    def verb_translate(self, args):
        _arity(args, 1 + self.scene.dim)
        obj = self.entity(args[0], _OBJECTS)
        a = np.array([self.number(t) for t in args[1:]])
        return describe(apply_versor(translator(a), obj.value))

    def verb_rotate(self, args):
        if len(args) not in (3, 5) or (len(args) == 5 and args[3] != "about"):
            raise QueryError("usage: rotate <obj> <plane> <angle> [about <pt>]")
        obj = self.entity(args[0], _OBJECTS)
        try:
            angle = parse_angle(args[2])
        except ValueError:
            raise QueryError(f"expected an angle, got {args[2]!r}") from None
        try:
            plane = plane_bivector(args[1], self.scene.dim)
        except GeometryError as exc:
            raise QueryError(str(exc)) from None
        rotor = rotor_euclidean(plane, angle)
        if len(args) == 5:
            rotor = rotor_about_point(rotor, self.entity(args[4], ("point",)).anchors[0])
        return describe(apply_versor(rotor, obj.value))

    def verb_apply(self, args):
        _arity(args, 2)
        v = self.entity(args[0], ("versor",))
        obj = self.entity(args[1], _OBJECTS)
        return describe(apply_versor(v.value, obj.value))

    def verb_bounce(self, args):
        if len(args) < 3:
            raise QueryError("usage: bounce <line> <mirror>... <N>")
        ray = self.entity(args[0], ("line",))
        mirrors = [(n, self.entity(n, _MIRRORS[self.scene.dim])) for n in args[1:-1]]
        try:
            count = int(args[-1])
        except ValueError:
            raise QueryError(f"expected a bounce count, got {args[-1]!r}") from None
        if count < 0:
            raise QueryError("bounce count must be non-negative")
        origin = ray.anchors[0]
        direction = line_data(ray.value).direction
        lines, hits = [], []
        for k in range(1, count + 1):
            hit = _first_hit(origin, direction, mirrors)
            if hit is None:
                break
            name, point, mirror = hit
            blade = line_through(embed(origin), embed(point))
            plane = mirror if is_flat(mirror) else tangent_plane(mirror, embed(point))
            direction = line_data(reflect_in_flat_or_sphere(blade, plane)).direction
            origin = point
            lines.append(f"bounce {k}: {name} at {fmt_point(point)} direction {fmt_point(direction)}")
            hits.append({"mirror": name, "point": _plist(point), "direction": _plist(direction)})
        lines.append(f"exit: from {fmt_point(origin)} direction {fmt_point(direction)}")
        return "\n".join(lines), {"bounces": hits, "exit_point": _plist(origin),
                                  "exit_direction": _plist(direction)}


def _first_hit(origin, direction, mirrors):
    """Nearest mirror crossing strictly ahead of ``origin`` along ``direction``."""
    blade = line_through(embed(origin), embed(origin + direction))
    best = None
    scale = 1.0 + float(np.linalg.norm(origin))
    for name, ent in mirrors:
        try:
            m = meet(blade, ent.value)
        except GeometryError:
            continue
        if m.kind is not MeetKind.TWO_POINTS:
            continue
        for p in m.points:
            t = float(np.dot(p - origin, direction))
            if t > 1e-9 * scale and (best is None or t < best[0]):
                best = (t, name, p, ent.value)
    return None if best is None else best[1:]


def _arity(args, *counts):
    if len(args) not in counts:
        want = " or ".join(str(c) for c in counts)
        raise QueryError(f"expected {want} arguments, got {len(args)}")


_PRIMITIVES = ("line", "circle", "plane", "sphere")
_OBJECTS = ("point",) + _PRIMITIVES
_MIRRORS = {2: ("line", "circle"), 3: ("plane", "sphere")}


def run_query(scene: Scene, query: str, eps: float = DEFAULT_EPS) -> QueryResult:
    """Evaluate one query string such as ``"dist a b"`` against ``scene``.

    Raises :class:`QueryError` for malformed queries and
    :class:`~confgeom.errors.GeometryError` when the geometry has no answer.
    """
    words = query.split()
    if not words:
        raise QueryError("empty query")
    verb, args = words[0], words[1:]
    handler = getattr(_Runner(scene, eps), f"verb_{verb}", None)
    if handler is None:
        raise QueryError(f"unknown verb {verb!r}")
    text, data = handler(args)
    return QueryResult(text, {"query": query, **data})
