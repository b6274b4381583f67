"""Orbits of isometric spheres, dual circles and SVG figures."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import kernels
from .comprbody import CompressionBodyRep, VerticalFundamentalDomain, lattice_window
from .isosphere import TANGENT_TOL
from .pinch import BudgetExceeded, GroupWord, _mergeable, _syllable_choices, word_lifts

MAX_ORBIT_LEN = 10
DEDUP_SCALE = 1e9


class NotTangent(ValueError):
    pass


class IoFailure(OSError):
    pass


@dataclass(frozen=True)
class Circle:
    center: complex
    radius: float
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if not self.radius > 0:
            raise ValueError("radius must be positive")

    def key(self) -> tuple[int, int, int]:
        return (
            round(self.radius * DEDUP_SCALE),
            round(self.center.real * DEDUP_SCALE),
            round(self.center.imag * DEDUP_SCALE),
        )

    def translate(self, t, label: str | None = None) -> "Circle":
        return Circle(self.center + t, self.radius, self.label if label is None else label)

    def to_json(self) -> dict:
        d = {"center": _pair(self.center), "radius": _num(self.radius)}
        if self.label:
            d["label"] = self.label
        return d


@dataclass(frozen=True)
class Line:
    point: complex
    direction: complex
    label: str = ""

    def __post_init__(self):
        d = complex(self.direction)
        if d == 0:
            raise ValueError("direction must be nonzero")
        object.__setattr__(self, "point", complex(self.point))
        object.__setattr__(self, "direction", d / abs(d))

    def to_json(self) -> dict:
        d = {"line": {"point": _pair(self.point), "direction": _pair(self.direction)}}
        if self.label:
            d["label"] = self.label
        return d


ExtendedCircle = Circle | Line


def _num(x: float) -> float:
    x = float(f"{x:.12g}")
    return 0.0 if x == 0 else x


def _pair(z: complex) -> list[float]:
    return [_num(z.real), _num(z.imag)]


@dataclass
class CirclePacking:
    circles: list
    tangencies: list = field(default_factory=list)
    tol: float = TANGENT_TOL

    def to_json(self) -> dict:
        return {
            "circles": [c.to_json() for c in self.circles],
            "tangencies": [list(t) for t in self.tangencies],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def keys(self) -> set:
        return {c.key() for c in self.circles if isinstance(c, Circle)}


def find_tangencies(circles: list, tol: float) -> list[tuple[int, int]]:
    idx = [i for i, c in enumerate(circles) if isinstance(c, Circle)]
    if len(idx) < 2:
        return []
    cs = np.array([circles[i].center for i in idx], dtype=np.complex128)
    rs = np.array([circles[i].radius for i in idx], dtype=np.float64)
    pairs = kernels.tangent_pairs(cs, rs, tol)
    return sorted((idx[i], idx[j]) for i, j in pairs.tolist())


def packing(circles: list, tol: float = TANGENT_TOL) -> CirclePacking:
    return CirclePacking(list(circles), find_tangencies(circles, tol), tol)


def _sort_key(c: Circle):
    k = c.key()
    return (-k[0], k[1], k[2])


# ---------------------------------------------------------------------------
# orbits


def _orbit_words(n: int, max_len: int) -> list[GroupWord]:
    # I(T g) = I(g) for a translation T, so words may start with a gamma syllable
    choices = list(_syllable_choices(n, max_len))
    out: list[GroupWord] = []

    def extend(seq, used):
        if seq:
            out.append(GroupWord(tuple(seq)))
        for syl, cost in choices:
            if used + cost > max_len:
                continue
            if not seq and syl[0] == "P":
                continue
            if seq and _mergeable(seq[-1], syl):
                continue
            seq.append(syl)
            extend(seq, used + cost)
            seq.pop()

    extend([], 0)
    return out


def orbit_spheres(rep: CompressionBodyRep, max_len: int, tol: float = TANGENT_TOL) -> CirclePacking:
    """Isometric spheres of every reduced word of length <= max_len.

    Words fixing infinity are skipped; duplicates (center and radius agreeing
    to 1e-9) are merged, keeping the first word in enumeration order.
    """
    if max_len > MAX_ORBIT_LEN:
        raise BudgetExceeded(f"max_len {max_len} exceeds the budget of {MAX_ORBIT_LEN}")
    words = _orbit_words(rep.n, max_len)
    words.sort(key=lambda w: (len(w), w.sort_key()))
    if not words:
        return CirclePacking([], [], tol)
    lifts = word_lifts(rep, words)
    c = lifts[:, 1, 0]
    d = lifts[:, 1, 1]
    seen = {}
    for w, cc, dd in zip(words, c.tolist(), d.tolist()):
        if abs(cc) <= 1e-12:
            continue
        circ = Circle(-dd / cc, 1.0 / abs(cc), "".join(str(w).split()))
        seen.setdefault(circ.key(), circ)
    circles = sorted(seen.values(), key=_sort_key)
    return packing(circles, tol)


# ---------------------------------------------------------------------------
# dual circles


def _tangency_point(c1: Circle, c2: Circle) -> complex:
    u = c2.center - c1.center
    return c1.center + c1.radius * u / abs(u)


def dual_circle(c1: Circle, c2: Circle, c3: Circle, tol: float = TANGENT_TOL):
    """The circle through the three pairwise tangency points.

    The inputs must be pairwise externally tangent.  If the tangency points
    are collinear the result is returned as a ``Line``.
    """
    cs = sorted([c1, c2, c3], key=lambda c: (c.center.real, c.center.imag, c.radius))
    for i in range(3):
        for j in range(i + 1, 3):
            mg = abs(cs[i].center - cs[j].center) - (cs[i].radius + cs[j].radius)
            if abs(mg) > tol:
                raise NotTangent(f"circles {i} and {j} are not externally tangent (margin {mg:.3g})")
    p = [_tangency_point(cs[0], cs[1]), _tangency_point(cs[1], cs[2]), _tangency_point(cs[0], cs[2])]
    return circumcircle(*p, tol=tol)


def circumcircle(p1: complex, p2: complex, p3: complex, tol: float = TANGENT_TOL):
    b = p2 - p1
    c = p3 - p1
    cross = (b.conjugate() * c).imag
    scale = max(abs(b), abs(c), 1.0)
    if abs(cross) <= tol * scale * scale:
        direction = c if abs(c) >= abs(b) else b
        return Line(p1, direction, "dual")
    # center relative to p1 solves |z|^2 = 2 Re(conj(z) b) and the same for c
    z = 1j * (abs(c) ** 2 * b - abs(b) ** 2 * c) / (2 * cross)
    return Circle(p1 + z, abs(z), "dual")


# ---------------------------------------------------------------------------
# figures


def _lattice_translates(circles: list[Circle], rep: CompressionBodyRep, reach: float):
    out = []
    for p, q in [(0, 0)] + lattice_window(rep.a, rep.b, reach):
        v = p * rep.a + q * rep.b
        for c in circles:
            lab = c.label if (p, q) == (0, 0) else f"{c.label}@({p},{q})"
            out.append(c.translate(v, lab))
    return out


def figure_packing(
    rep: CompressionBodyRep, max_len: int = 1, dual: bool = False, tol: float = TANGENT_TOL
) -> tuple[CirclePacking, VerticalFundamentalDomain]:
    """Circles for a picture of a fundamental region of ``rep``.

    Draws the orbit spheres, every lattice translate of them touching at
    least two orbit spheres (which closes up the curvilinear triangles at
    pinched tangencies), and with ``dual`` the dual circle of every
    curvilinear triangle whose center lies in the vertical fundamental
    domain.
    """
    base = [c for c in orbit_spheres(rep, max_len, tol).circles if isinstance(c, Circle)]
    domain = rep.default_domain()
    rmax = max(c.radius for c in base)
    centers = [c.center for c in base]
    diam = max(abs(z - w) for z in centers for w in centers)
    reach = diam + 4 * rmax + abs(rep.a) + abs(rep.b)
    pool = _lattice_translates(base, rep, reach)
    keys = {c.key() for c in base}

    extra = {}
    for c in pool:
        if c.key() in keys:
            continue
        touching = sum(abs(abs(c.center - o.center) - c.radius - o.radius) <= tol for o in base)
        if touching >= 2:
            extra.setdefault(c.key(), c)
    drawn = base + sorted(extra.values(), key=_sort_key)

    if dual:
        uniq = {}
        for c in pool:
            uniq.setdefault(c.key(), c)
        pool = sorted(uniq.values(), key=_sort_key)
        tang = find_tangencies(pool, tol)
        nbrs: dict[int, set] = {}
        for i, j in tang:
            nbrs.setdefault(i, set()).add(j)
            nbrs.setdefault(j, set()).add(i)
        duals = {}
        for i, j in tang:
            for k in sorted(nbrs[i] & nbrs[j]):
                if k <= j:
                    continue
                dc = dual_circle(pool[i], pool[j], pool[k], tol)
                if isinstance(dc, Circle) and domain.contains(dc.center):
                    duals.setdefault(dc.key(), dc)
        drawn += sorted(duals.values(), key=_sort_key)
    return packing(drawn, tol), domain


def _f(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def render_svg(
    pack: CirclePacking,
    domain: VerticalFundamentalDomain | None,
    path,
    stroke_width: float | None = None,
    stroke: str = "#1f3b73",
    dual_stroke: str = "#c0392b",
    domain_stroke: str = "#555555",
) -> Path:
    """Write ``pack`` (and the domain outline) as an SVG 1.1 document.

    The plane is drawn with the imaginary axis pointing up; coordinates are
    written with 6 decimals and the view box is padded by 10%.
    """
    if not pack.circles:
        raise ValueError("cannot render an empty packing")
    xs, ys = [], []
    for c in pack.circles:
        if isinstance(c, Circle):
            xs += [c.center.real - c.radius, c.center.real + c.radius]
            ys += [c.center.imag - c.radius, c.center.imag + c.radius]
    if domain is not None:
        for z in domain.corners():
            xs.append(z.real)
            ys.append(z.imag)
    if not xs:
        for c in pack.circles:
            xs.append(c.point.real)
            ys.append(c.point.imag)
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    w = max(x1 - x0, 1e-9)
    h = max(y1 - y0, 1e-9)
    x0, x1 = x0 - 0.1 * w, x1 + 0.1 * w
    y0, y1 = y0 - 0.1 * h, y1 + 0.1 * h
    if stroke_width is None:
        stroke_width = 0.004 * max(x1 - x0, y1 - y0)

    lines = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_f(x0)} {_f(-y1)} {_f(x1 - x0)} {_f(y1 - y0)}">',
        f'<g fill="none" stroke-width="{_f(stroke_width)}">',
    ]
    if domain is not None:
        pts = " ".join(f"{_f(z.real)},{_f(-z.imag)}" for z in domain.corners())
        lines.append(f'<polygon points="{pts}" stroke="{domain_stroke}" stroke-dasharray="{_f(4 * stroke_width)}"/>')
    diag = math.hypot(x1 - x0, y1 - y0)
    for c in pack.circles:
        colour = dual_stroke if c.label.startswith("dual") else stroke
        if isinstance(c, Circle):
            lines.append(
                f'<circle cx="{_f(c.center.real)}" cy="{_f(-c.center.imag)}" r="{_f(c.radius)}" stroke="{colour}"/>'
            )
        else:
            p, d = c.point, c.direction * diag
            lines.append(
                f'<line x1="{_f((p - d).real)}" y1="{_f(-(p - d).imag)}" '
                f'x2="{_f((p + d).real)}" y2="{_f(-(p + d).imag)}" stroke="{colour}"/>'
            )
    lines += ["</g>", "</svg>", ""]
    path = Path(path)
    try:
        path.write_text("\n".join(lines), encoding="utf-8", newline="\n")
    except OSError as exc:
        raise IoFailure(str(exc)) from exc
    return path
