"""Deterministic SVG pictures of models, unfolded surfaces and
trajectories.

Output depends only on the argument values: coordinates are printed with
%.6g, containers are iterated in index order, and no timestamps or ids
are embedded, so rerendering the same object gives identical bytes.
The y axis is flipped at write time so the pictures use mathematical
orientation.
"""

from __future__ import annotations

import math

from .models import ModelSurface, WindTreeModel
from .surface import TranslationSurface
from .unfold import UnfoldedSurface


def _f(x) -> str:
    v = float(x)
    if v == 0.0:
        v = 0.0   # normalize -0
    return "%.6g" % v


def _pt(x, y) -> str:
    return "%s,%s" % (_f(x), _f(-float(y)))


class _Canvas:
    def __init__(self):
        self.parts: list[str] = []
        self.xmin = self.ymin = math.inf
        self.xmax = self.ymax = -math.inf

    def see(self, x, y):
        x, y = float(x), -float(y)
        self.xmin = min(self.xmin, x)
        self.xmax = max(self.xmax, x)
        self.ymin = min(self.ymin, y)
        self.ymax = max(self.ymax, y)

    def poly(self, pts, fill="none", stroke="#333", width=0.01, dash=None):
        for x, y in pts:
            self.see(x, y)
        d = ' stroke-dasharray="%s"' % dash if dash else ""
        self.parts.append(
            '<polygon points="%s" fill="%s" stroke="%s" stroke-width="%s"%s/>'
            % (" ".join(_pt(x, y) for x, y in pts), fill, stroke, _f(width), d))

    def line(self, a, b, stroke="#333", width=0.01, dash=None):
        self.see(*a)
        self.see(*b)
        d = ' stroke-dasharray="%s"' % dash if dash else ""
        self.parts.append(
            '<line x1="%s" y1="%s" x2="%s" y2="%s" stroke="%s" '
            'stroke-width="%s"%s/>'
            % (_f(a[0]), _f(-float(a[1])), _f(b[0]), _f(-float(b[1])),
               stroke, _f(width), d))

    def polyline(self, pts, stroke="#1f77b4", width=0.012):
        for x, y in pts:
            self.see(x, y)
        self.parts.append(
            '<polyline points="%s" fill="none" stroke="%s" '
            'stroke-width="%s" stroke-linejoin="round"/>'
            % (" ".join(_pt(x, y) for x, y in pts), stroke, _f(width)))

    def dot(self, p, r=0.02, fill="#d62728"):
        self.see(p[0], p[1])
        self.parts.append('<circle cx="%s" cy="%s" r="%s" fill="%s"/>'
                          % (_f(p[0]), _f(-float(p[1])), _f(r), fill))

    def text(self, p, s, size=0.1, fill="#333"):
        self.see(p[0], p[1])
        self.parts.append(
            '<text x="%s" y="%s" font-size="%s" text-anchor="middle" '
            'fill="%s" font-family="sans-serif">%s</text>'
            % (_f(p[0]), _f(-float(p[1])), _f(size), fill, s))

    def render(self) -> str:
        if not self.parts:
            self.xmin = self.ymin = 0.0
            self.xmax = self.ymax = 1.0
        pad = 0.05 * max(self.xmax - self.xmin, self.ymax - self.ymin, 1e-9)
        x0, y0 = self.xmin - pad, self.ymin - pad
        w = self.xmax - self.xmin + 2 * pad
        h = self.ymax - self.ymin + 2 * pad
        head = ('<svg xmlns="http://www.w3.org/2000/svg" '
                'viewBox="%s %s %s %s" width="640" height="%d">'
                % (_f(x0), _f(y0), _f(w), _f(h), int(640 * h / w) or 1))
        return head + "\n" + "\n".join(self.parts) + "\n</svg>\n"


def _hue(i: int, n: int) -> str:
    return "hsl(%d,65%%,45%%)" % (int(360 * i / max(n, 1)) % 360)


def _model_svg(model: WindTreeModel, cells: int = 2) -> str:
    cv = _Canvas()
    t1, t2 = model.tau1, model.tau2
    obs = model.realized_obstacles()
    for j in range(-cells, cells + 1):
        for i in range(-cells, cells + 1):
            sx = float(t1.x) * i + float(t2.x) * j
            sy = float(t1.y) * i + float(t2.y) * j
            cv.poly([(float(v.x) + sx, float(v.y) + sy)
                     for v in model.fundamental.vertices],
                    stroke="#ccc", width=0.004)
            for poly in obs:
                pts = [(float(v.x) + sx, float(v.y) + sy)
                       for v in poly.vertices]
                if poly.degenerate:
                    cv.line(pts[0], pts[1], stroke="#444", width=0.012)
                else:
                    cv.poly(pts, fill="#555", stroke="#222", width=0.006)
            if model.embedding is not None:
                s1, s2 = model.embedding.segment
                cv.line((float(s1.x) + sx, float(s1.y) + sy),
                        (float(s2.x) + sx, float(s2.y) + sy),
                        stroke="#d62728", width=0.008)
    return cv.render()


def _surface_svg(surface: TranslationSurface, labels=None) -> str:
    cv = _Canvas()
    npairs = len(surface.pair_list)
    for p, poly in enumerate(surface.polygons):
        pts = [(float(v.x), float(v.y)) for v in poly.vertices]
        cv.poly(pts, fill="#f3f1ec", stroke="none", width=0)
        xs = [q[0] for q in pts]
        ys = [q[1] for q in pts]
        for k in range(poly.n):
            a, b = poly.edge(k)
            slot = (p, k)
            if slot in surface.boundary:
                cv.line((float(a.x), float(a.y)), (float(b.x), float(b.y)),
                        stroke="#000", width=0.02)
                continue
            color = _hue(surface.pair_index[slot], npairs)
            cv.line((float(a.x), float(a.y)), (float(b.x), float(b.y)),
                    stroke=color, width=0.012)
        gx = sum(xs) / poly.n
        gy = sum(ys) / poly.n
        name = labels[p] if labels else str(p)
        size = 0.12 * max(max(xs) - min(xs), max(ys) - min(ys), 1e-9)
        cv.text((gx, gy), name, size=size)
    return cv.render()


def _trajectory_svg(traj) -> str:
    cv = _Canvas()
    model = traj.model
    x, y = traj.planar()
    i0 = int(min(traj.l1.min(), 0)) - 1
    i1 = int(max(traj.l1.max(), 0)) + 1
    j0 = int(min(traj.l2.min(), 0)) - 1
    j1 = int(max(traj.l2.max(), 0)) + 1
    span = (i1 - i0 + 1) * (j1 - j0 + 1)
    t1, t2 = model.tau1, model.tau2
    obs = model.realized_obstacles()
    if span <= 4096:
        for j in range(j0, j1 + 1):
            for i in range(i0, i1 + 1):
                sx = float(t1.x) * i + float(t2.x) * j
                sy = float(t1.y) * i + float(t2.y) * j
                for poly in obs:
                    pts = [(float(v.x) + sx, float(v.y) + sy)
                           for v in poly.vertices]
                    if poly.degenerate:
                        cv.line(pts[0], pts[1], stroke="#bbb", width=0.01)
                    else:
                        cv.poly(pts, fill="#ddd", stroke="none", width=0)
    cv.polyline(list(zip(x.tolist(), y.tolist())))
    cv.dot((float(x[0]), float(y[0])))
    return cv.render()


def render_svg(obj, **options) -> str:
    """SVG text for a model (obstacle grid), an unfolded surface
    (labeled copies, edges colored by pairing), or a trajectory
    (planar polyline over the obstacles it visited)."""
    if isinstance(obj, WindTreeModel):
        return _model_svg(obj, **options)
    if isinstance(obj, ModelSurface):
        obj = obj.unfolded
    if isinstance(obj, UnfoldedSurface):
        labels = [""] * len(obj.surface.polygons)
        for g in obj.group.elements():
            labels[obj.copy_index(g)] = str(g)
        return _surface_svg(obj.surface, labels=labels, **options)
    if isinstance(obj, TranslationSurface):
        return _surface_svg(obj, **options)
    if hasattr(obj, "planar") and hasattr(obj, "l1"):
        return _trajectory_svg(obj, **options)
    raise TypeError("no renderer for %r" % type(obj).__name__)
