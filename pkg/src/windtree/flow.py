"""Billiard trajectory simulation on periodic wind-tree models.

Two engines compute the same flow:

* ``cover_trace`` runs in the fundamental cell and keeps the lattice cell
  and the dihedral label as explicit state, wrapping through paired cell
  edges.  The planar point is recovered as q + l1*tau1 + l2*tau2.
* ``trace`` runs in the plane against the lattice of obstacle copies,
  walking cells along the ray to find first hits.

Positions are doubles; directions are renormalized after every bounce so
the speed cannot drift.  A trajectory ends when its bounce budget or time
horizon runs out, or when it comes within ``CORNER_TOL`` of a wall corner
(two wall hits closer than ``TIE_TOL`` in time count as a corner too).
"""

from __future__ import annotations

from dataclasses import dataclass
import math
import random
from typing import Optional, Sequence

import numpy as np

from .exactgeom import (DihedralElement, DihedralGroup, RatAngle, Vec2,
                        dihedral_group, point_in_polygon, vec)
from .models import WindTreeModel, ModelSurface, _lattice_steps

try:
    import numba
except ImportError:        # pragma: no cover - numba is a declared dependency
    numba = None


class StartInsideObstacle(Exception):
    """The initial point lies inside an obstacle."""


CORNER_TOL = 1e-9
TIE_TOL = 1e-12

_STATUS = {0: "budget", 1: "length", 2: "corner"}


# ---------------------------------------------------------------------------
# chart tables: flat float arrays the step kernel runs on


class ChartTables:
    """Cell geometry flattened for the step kernel.

    Edge items are the cell boundary edges (kind 0, with wrap translation
    and integer lattice step) followed by the obstacle wall edges (kind 1,
    with the group index of their reflection).
    """

    def __init__(self, model: WindTreeModel):
        if not model.obstacles:
            raise ValueError("model has no obstacles; the flow never bounces")
        self.model = model
        self.group: DihedralGroup = dihedral_group(model.wall_axes())
        self.n = self.group.n
        a_table = _lattice_steps(model)

        dom = model.fundamental
        segs = []
        kind = []
        partner = []
        wrapv = []
        stepa = []
        reflk = []
        origins: list[tuple] = []
        for j in range(dom.n):
            a, b = dom.edge(j)
            jp = model.f_pairing[j]
            tau = b - dom.edge(jp)[0]   # carries the partner edge onto e_j
            segs.append((float(a.x), float(a.y), float(b.x), float(b.y)))
            kind.append(0)
            partner.append(jp)
            wrapv.append((float(tau.x), float(tau.y)))
            stepa.append(a_table[j])
            reflk.append(-1)
            origins.append(("outer", j))
        for h, ob in enumerate(model.obstacles):
            poly = ob.realized()
            axes = ob.realized_axes()
            for k in range(poly.n):
                a, b = poly.edge(k)
                segs.append((float(a.x), float(a.y), float(b.x), float(b.y)))
                kind.append(1)
                partner.append(len(partner))
                wrapv.append((0.0, 0.0))
                stepa.append((0, 0))
                reflk.append(self.group.reflection_about(axes[k]).k)
                origins.append(("hole", h, k))

        self.edges = np.array(segs, dtype=np.float64)
        self.kind = np.array(kind, dtype=np.int64)
        self.partner = np.array(partner, dtype=np.int64)
        self.wrapv = np.array(wrapv, dtype=np.float64)
        self.stepa = np.array(stepa, dtype=np.int64)
        self.reflk = np.array(reflk, dtype=np.int64)
        dx = self.edges[:, 2] - self.edges[:, 0]
        dy = self.edges[:, 3] - self.edges[:, 1]
        ln = np.hypot(dx, dy)
        self.eunit = np.stack([dx / ln, dy / ln], axis=1)
        self.origins = origins
        self.t1 = (float(model.tau1.x), float(model.tau1.y))
        self.t2 = (float(model.tau2.x), float(model.tau2.y))

    def origin_of(self, edge_index: int) -> tuple:
        return self.origins[edge_index]

    def label(self, r: int, k: int) -> DihedralElement:
        return self.group.reflection(k) if r else self.group.rotation(k)


def _tables(model) -> ChartTables:
    if isinstance(model, ModelSurface):
        model = model.model
    tb = getattr(model, "_chart_tables", None)
    if tb is None:
        tb = ChartTables(model)
        model._chart_tables = tb
    return tb


# ---------------------------------------------------------------------------
# the step kernel (one source; numba-compiled when available)


def _sim_impl(edges, kind, partner, wrapv, stepa, reflk, eunit,
              t1x, t1y, t2x, t2y,
              qx, qy, dx, dy, l1, l2, rr, kk, n,
              budget, t_max, corner_tol, tie_tol,
              ev_t, ev_qx, ev_qy, ev_dx, ev_dy,
              ev_l1, ev_l2, ev_r, ev_k, ev_edge,
              do_ret, ret_eps, rpx, rpy, cps, env):
    m = edges.shape[0]
    ev_cap = ev_t.shape[0]
    n_cp = cps.shape[0]
    t = 0.0
    bounces = 0
    n_ev = 0
    status = 1
    excl = -1

    px = qx + t1x * l1 + t2x * l2
    py = qy + t1y * l1 + t2y * l2
    wx0 = px - rpx
    wy0 = py - rpy
    c0 = wx0 * wx0 + wy0 * wy0 - ret_eps * ret_eps
    inside = c0 < 0.0
    left = not inside
    returned = False
    ret_time = -1.0
    emax = math.sqrt(wx0 * wx0 + wy0 * wy0)
    cpi = 0

    while True:
        best = 1.0e308
        bi = -1
        tie = False
        for i in range(m):
            if i == excl:
                continue
            ax = edges[i, 0]
            ay = edges[i, 1]
            ux = edges[i, 2] - ax
            uy = edges[i, 3] - ay
            den = dx * uy - dy * ux
            if den == 0.0:
                continue
            wx = ax - qx
            wy = ay - qy
            tt = (wx * uy - wy * ux) / den
            if tt <= 1e-14:
                continue
            ss = (wx * dy - wy * dx) / den
            wid = corner_tol / math.hypot(ux, uy)
            if ss < -wid or ss > 1.0 + wid:
                continue
            if bi >= 0 and abs(tt - best) < tie_tol:
                tie = True
                if tt < best:
                    best = tt
                    bi = i
            elif tt < best:
                best = tt
                bi = i
                tie = False

        if bi == -1 and t_max > 1.0e307:
            status = 1
            break
        seg = best
        capped = False
        if bi == -1 or t + best >= t_max:
            seg = t_max - t
            capped = True

        # envelope checkpoints inside this straight piece
        while cpi < n_cp and cps[cpi] <= t + seg:
            dt = cps[cpi] - t
            cx = px + dt * dx - rpx
            cy = py + dt * dy - rpy
            dd = math.sqrt(cx * cx + cy * cy)
            if dd > emax:
                emax = dd
            env[cpi] = emax
            cpi += 1
        # first re-entry of the return ball
        if do_ret == 1 and not returned:
            wx0 = px - rpx
            wy0 = py - rpy
            b = 2.0 * (wx0 * dx + wy0 * dy)
            c = wx0 * wx0 + wy0 * wy0 - ret_eps * ret_eps
            if not inside:
                disc = b * b - 4.0 * c
                if disc > 0.0:
                    r1 = (-b - math.sqrt(disc)) * 0.5
                    if 0.0 < r1 <= seg and left:
                        returned = True
                        ret_time = t + r1
            ce = c + b * seg + seg * seg
            new_inside = ce < 0.0
            if inside and not new_inside:
                left = True
            inside = new_inside

        qx += seg * dx
        qy += seg * dy
        px += seg * dx
        py += seg * dy
        t += seg
        exx = px - rpx
        eyy = py - rpy
        dd = math.sqrt(exx * exx + eyy * eyy)
        if dd > emax:
            emax = dd
        if capped:
            status = 1
            break

        i = bi
        d0 = math.hypot(qx - edges[i, 0], qy - edges[i, 1])
        d1 = math.hypot(qx - edges[i, 2], qy - edges[i, 3])
        if tie or d0 < corner_tol or d1 < corner_tol:
            status = 2
            break

        if kind[i] == 0:
            qx -= wrapv[i, 0]
            qy -= wrapv[i, 1]
            l1 += stepa[i, 0]
            l2 += stepa[i, 1]
            excl = partner[i]
            px = qx + t1x * l1 + t2x * l2
            py = qy + t1y * l1 + t2y * l2
        else:
            ex = eunit[i, 0]
            ey = eunit[i, 1]
            dn = 2.0 * (dx * ex + dy * ey)
            ndx = dn * ex - dx
            ndy = dn * ey - dy
            nrm = math.sqrt(ndx * ndx + ndy * ndy)
            dx = ndx / nrm
            dy = ndy / nrm
            kk = (reflk[i] - kk) % n
            rr = 1 - rr
            bounces += 1
            if n_ev < ev_cap:
                ev_t[n_ev] = t
                ev_qx[n_ev] = qx
                ev_qy[n_ev] = qy
                ev_dx[n_ev] = dx
                ev_dy[n_ev] = dy
                ev_l1[n_ev] = l1
                ev_l2[n_ev] = l2
                ev_r[n_ev] = rr
                ev_k[n_ev] = kk
                ev_edge[n_ev] = i
                n_ev += 1
            excl = i
            if bounces >= budget:
                status = 0
                break

    rflag = 1 if returned else 0
    return (status, n_ev, bounces, t, qx, qy, dx, dy, l1, l2, rr, kk,
            rflag, ret_time, emax)


if numba is not None:
    _sim = numba.njit(cache=True, fastmath=False)(_sim_impl)
else:                      # pragma: no cover
    _sim = _sim_impl


# ---------------------------------------------------------------------------
# trajectory container


@dataclass
class TrajectoryState:
    t: float
    point: tuple[float, float]
    q: tuple[float, float]
    d: tuple[float, float]
    cell: tuple[int, int]
    label: DihedralElement


@dataclass
class CollisionEvent:
    t: float
    point: tuple[float, float]
    q: tuple[float, float]
    d_out: tuple[float, float]
    cell: tuple[int, int]
    label: DihedralElement
    wall: tuple


class Trajectory:
    """Piecewise straight planar path, stored as one row per collision.

    Row 0 is the initial state; rows with ``edge >= 0`` are bounces; a
    terminal row with edge -2 is appended when the run ended on the time
    horizon or at a corner.  Directions are post-event.
    """

    def __init__(self, tables: ChartTables, status: str, theta, arrays,
                 first_return_t=None, envelope=None):
        self.tables = tables
        self.model = tables.model
        self.status = status
        self.theta = theta
        (self.t, self.qx, self.qy, self.dx, self.dy,
         self.l1, self.l2, self.r, self.k, self.edge) = arrays
        self.first_return_t = first_return_t
        self.envelope = envelope
        self._events = None

    def __len__(self) -> int:
        return len(self.t)

    @property
    def n_bounces(self) -> int:
        return int(np.count_nonzero(self.edge >= 0))

    def planar(self) -> tuple[np.ndarray, np.ndarray]:
        t1x, t1y = self.tables.t1
        t2x, t2y = self.tables.t2
        return (self.qx + t1x * self.l1 + t2x * self.l2,
                self.qy + t1y * self.l1 + t2y * self.l2)

    def state(self, row: int) -> TrajectoryState:
        x, y = self.planar()
        return TrajectoryState(
            float(self.t[row]), (float(x[row]), float(y[row])),
            (float(self.qx[row]), float(self.qy[row])),
            (float(self.dx[row]), float(self.dy[row])),
            (int(self.l1[row]), int(self.l2[row])),
            self.tables.label(int(self.r[row]), int(self.k[row])))

    @property
    def final(self) -> TrajectoryState:
        return self.state(len(self.t) - 1)

    @property
    def events(self) -> list[CollisionEvent]:
        if self._events is None:
            x, y = self.planar()
            out = []
            for i in range(len(self.t)):
                e = int(self.edge[i])
                if e < 0:
                    continue
                out.append(CollisionEvent(
                    float(self.t[i]), (float(x[i]), float(y[i])),
                    (float(self.qx[i]), float(self.qy[i])),
                    (float(self.dx[i]), float(self.dy[i])),
                    (int(self.l1[i]), int(self.l2[i])),
                    self.tables.label(int(self.r[i]), int(self.k[i])),
                    self.tables.origin_of(e)))
            self._events = out
        return self._events

    def to_csv(self, target) -> None:
        """Rows t,x,y,dx,dy,l1,l2,rho at 17 significant digits."""
        close = False
        if isinstance(target, str):
            target = open(target, "w")
            close = True
        try:
            target.write("t,x,y,dx,dy,l1,l2,rho\n")
            x, y = self.planar()
            for i in range(len(self.t)):
                rho = ("r%d" if self.r[i] else "t%d") % self.k[i]
                target.write("%.17g,%.17g,%.17g,%.17g,%.17g,%d,%d,%s\n" % (
                    self.t[i], x[i], y[i], self.dx[i], self.dy[i],
                    self.l1[i], self.l2[i], rho))
        finally:
            if close:
                target.close()


# ---------------------------------------------------------------------------
# start-point plumbing


def _unit_dir(direction) -> tuple[float, float]:
    if isinstance(direction, RatAngle):
        a = direction.radians()
        return math.cos(a), math.sin(a)
    if isinstance(direction, Vec2):
        x, y = float(direction.x), float(direction.y)
    elif isinstance(direction, (tuple, list)):
        x, y = float(direction[0]), float(direction[1])
    else:
        a = float(direction)
        return math.cos(a), math.sin(a)
    nrm = math.hypot(x, y)
    if nrm == 0.0:
        raise ValueError("direction must be nonzero")
    return x / nrm, y / nrm


def _uv_matrix(model) -> tuple[float, float, float, float]:
    """Inverse lattice matrix rows: p -> (u, v) with p = u*tau1 + v*tau2."""
    ax, ay = float(model.tau1.x), float(model.tau1.y)
    bx, by = float(model.tau2.x), float(model.tau2.y)
    det = ax * by - ay * bx
    return by / det, -bx / det, -ay / det, ax / det


def cell_of_point(model, p) -> tuple[int, int]:
    """Lattice cell l with p - l1*tau1 - l2*tau2 in the fundamental cell."""
    if isinstance(model, ModelSurface):
        model = model.model
    px, py = float(p[0]), float(p[1])
    m00, m01, m10, m11 = _uv_matrix(model)
    u = m00 * px + m01 * py
    v = m10 * px + m11 * py
    fv = model.fundamental.vertices
    us = [m00 * float(q.x) + m01 * float(q.y) for q in fv]
    vs = [m10 * float(q.x) + m11 * float(q.y) for q in fv]
    cand = []
    for i in range(math.floor(u - max(us)) - 1, math.floor(u - min(us)) + 2):
        for j in range(math.floor(v - max(vs)) - 1, math.floor(v - min(vs)) + 2):
            cand.append((i, j))
    boundary = None
    t1, t2 = model.tau1, model.tau2
    for (i, j) in cand:
        q = vec(px, py) - t1.scale(i) - t2.scale(j)
        where = point_in_polygon(q, fv)
        if where == "inside":
            return (i, j)
        if where == "boundary" and boundary is None:
            boundary = (i, j)
    if boundary is not None:
        return boundary
    raise ValueError("point %r is not covered by the cell tiling" % (p,))


def planar_to_chart(model, p) -> tuple[tuple[float, float], tuple[int, int]]:
    l = cell_of_point(model, p)
    t1x, t1y = float(model.tau1.x), float(model.tau1.y)
    t2x, t2y = float(model.tau2.x), float(model.tau2.y)
    q = (float(p[0]) - t1x * l[0] - t2x * l[1],
         float(p[1]) - t1y * l[0] - t2y * l[1])
    return q, l


def _check_free(model, q) -> None:
    for i, poly in enumerate(model.realized_obstacles()):
        if point_in_polygon(vec(q[0], q[1]), poly.vertices) == "inside":
            raise StartInsideObstacle("start point lies inside obstacle %d" % i)


def free_point(model) -> tuple[float, float]:
    """Deterministic point in the free part of the cell: the midpoint of
    the corner segment when the model carries one, else a scanned point
    away from all walls."""
    if isinstance(model, ModelSurface):
        model = model.model
    if model.embedding is not None:
        s1, s2 = model.embedding.segment
        return (float(s1.x + s2.x) / 2.0, float(s1.y + s2.y) / 2.0)
    fv = model.fundamental.vertices
    xs = [float(v.x) for v in fv]
    ys = [float(v.y) for v in fv]
    obs = model.realized_obstacles()
    margin = min(max(xs) - min(xs), max(ys) - min(ys)) * 1e-3
    for gj in range(1, 40):
        for gi in range(1, 40):
            x = min(xs) + (max(xs) - min(xs)) * gi / 40.0
            y = min(ys) + (max(ys) - min(ys)) * gj / 40.0
            pt = vec(x, y)
            if point_in_polygon(pt, fv) != "inside":
                continue
            if any(point_in_polygon(pt, o.vertices) != "outside" for o in obs):
                continue
            clear = True
            for poly in obs + [model.fundamental]:
                for kk in range(poly.n):
                    a, b = poly.edge(kk)
                    if _point_seg_dist(x, y, float(a.x), float(a.y),
                                       float(b.x), float(b.y)) < margin:
                        clear = False
                        break
                if not clear:
                    break
            if clear:
                return (x, y)
    raise ValueError("no free point found in the cell")


def _point_seg_dist(px, py, ax, ay, bx, by) -> float:
    ux, uy = bx - ax, by - ay
    den = ux * ux + uy * uy
    s = 0.0 if den == 0.0 else ((px - ax) * ux + (py - ay) * uy) / den
    s = min(1.0, max(0.0, s))
    return math.hypot(px - ax - s * ux, py - ay - s * uy)


# ---------------------------------------------------------------------------
# chart simulation


def _checkpoints(horizon: float, per_decade: int = 16,
                 decades: int = 4) -> np.ndarray:
    j = np.arange(per_decade * decades + 1)
    return horizon * 10.0 ** (-(per_decade * decades - j) / float(per_decade))


def envelope_slope(cps: np.ndarray, env: np.ndarray) -> float:
    """Least-squares slope of log envelope against log time over the
    final decade of filled checkpoints."""
    ok = np.isfinite(env) & (env > 0.0)
    if not np.any(ok):
        return math.nan
    tmax = cps[ok][-1]
    sel = ok & (cps >= tmax / 10.0 - 1e-12 * tmax)
    if np.count_nonzero(sel) < 2:
        return math.nan
    lx = np.log10(cps[sel])
    ly = np.log10(env[sel])
    lx = lx - lx.mean()
    return float(np.dot(lx, ly - ly.mean()) / np.dot(lx, lx))


def cover_trace(model, p, direction, budget: int = 10 ** 4,
                t_max: Optional[float] = None, store: bool = True,
                recurrence_eps: Optional[float] = None,
                envelope_horizon: Optional[float] = None) -> Trajectory:
    """Simulate in the fundamental cell, tracking cell and label.

    ``recurrence_eps`` turns on first-return detection against the start
    point, and ``envelope_horizon`` turns on running max-displacement
    checkpoints; both are recorded on the returned trajectory without
    storing per-collision rows when ``store`` is off.
    """
    tb = _tables(model)
    q, l = planar_to_chart(tb.model, p)
    _check_free(tb.model, q)
    ddx, ddy = _unit_dir(direction)
    if t_max is None:
        t_max = math.inf
    if envelope_horizon is not None:
        cps = _checkpoints(float(envelope_horizon))
        t_max = min(t_max, float(envelope_horizon))
    else:
        cps = np.empty(0, dtype=np.float64)
    env = np.full(len(cps), math.nan)
    # row storage is capped; longer runs keep statistics but drop rows
    cap = int(min(budget, 10 ** 6)) if store else 0
    ev = [np.empty(cap, dtype=np.float64) for _ in range(5)] + \
        [np.empty(cap, dtype=np.int64) for _ in range(5)]
    do_ret = 1 if recurrence_eps is not None else 0
    eps_v = float(recurrence_eps) if recurrence_eps is not None else 1.0
    p0x, p0y = float(p[0]), float(p[1])

    (status, n_ev, bounces, t, qx, qy, dxo, dyo, l1, l2, rr, kk,
     rflag, ret_time, emax) = _sim(
        tb.edges, tb.kind, tb.partner, tb.wrapv, tb.stepa, tb.reflk, tb.eunit,
        tb.t1[0], tb.t1[1], tb.t2[0], tb.t2[1],
        float(q[0]), float(q[1]), ddx, ddy,
        int(l[0]), int(l[1]), 0, 0, tb.n,
        int(budget), float(t_max), CORNER_TOL, TIE_TOL,
        ev[0], ev[1], ev[2], ev[3], ev[4],
        ev[5], ev[6], ev[7], ev[8], ev[9],
        do_ret, eps_v, p0x, p0y, cps, env)

    rows = _assemble_rows(
        (0.0, q[0], q[1], ddx, ddy, l[0], l[1], 0, 0),
        [a[:n_ev] for a in ev], status,
        (t, qx, qy, dxo, dyo, l1, l2, rr, kk), bounces)
    traj = Trajectory(tb, _STATUS[status], direction, rows,
                      first_return_t=(ret_time if rflag else None),
                      envelope=((cps, env) if len(cps) else None))
    traj.max_displacement = emax
    traj.bounces = bounces
    return traj


def _assemble_rows(first, ev, status, final, bounces):
    n = len(ev[0])
    # the final state is its own row unless it already is the last stored
    # event (budget hit with every bounce stored)
    extra = 1 if status != 0 or n < bounces else 0
    cols = []
    dtypes = [np.float64] * 5 + [np.int64] * 4
    for c in range(9):
        col = np.empty(n + 1 + extra, dtype=dtypes[c])
        col[0] = first[c]
        col[1:n + 1] = ev[c]
        if extra:
            col[n + 1] = final[c]
        cols.append(col)
    edge = np.empty(n + 1 + extra, dtype=np.int64)
    edge[0] = -1
    edge[1:n + 1] = ev[9]
    if extra:
        edge[n + 1] = -2
    return tuple(cols) + (edge,)


# ---------------------------------------------------------------------------
# planar simulation


class _PlanarGeom:
    def __init__(self, model: WindTreeModel):
        self.model = model
        self.uv = _uv_matrix(model)
        m00, m01, m10, m11 = self.uv
        self.obstacles = []
        for ob in model.obstacles:
            poly = ob.realized()
            vx = np.array([float(v.x) for v in poly.vertices])
            vy = np.array([float(v.y) for v in poly.vertices])
            us = m00 * vx + m01 * vy
            vs = m10 * vx + m11 * vy
            offs = [(i, j)
                    for i in range(math.floor(us.min()), math.floor(us.max()) + 1)
                    for j in range(math.floor(vs.min()), math.floor(vs.max()) + 1)]
            self.obstacles.append((vx, vy, offs))
        self.t1 = (float(model.tau1.x), float(model.tau1.y))
        self.t2 = (float(model.tau2.x), float(model.tau2.y))


def _planar_geom(model) -> _PlanarGeom:
    g = getattr(model, "_planar_geom", None)
    if g is None:
        g = _PlanarGeom(model)
        model._planar_geom = g
    return g


def _copy_hits(px, py, dx, dy, vx, vy, sx, sy, t_cap, exclude_k, out):
    """Append (t, k, s) for ray hits on the edges of one obstacle copy."""
    nv = len(vx)
    for k in range(nv):
        ax = vx[k] + sx
        ay = vy[k] + sy
        bx = vx[(k + 1) % nv] + sx
        by = vy[(k + 1) % nv] + sy
        ux, uy = bx - ax, by - ay
        den = dx * uy - dy * ux
        if den == 0.0:
            continue
        wx, wy = ax - px, ay - py
        tt = (wx * uy - wy * ux) / den
        if tt <= 1e-14 or tt > t_cap:
            continue
        ss = (wx * dy - wy * dx) / den
        wid = CORNER_TOL / math.hypot(ux, uy)
        if ss < -wid or ss > 1.0 + wid:
            continue
        if k == exclude_k:
            continue
        out.append((tt, k, ss, ax, ay, bx, by))


@dataclass
class PlanarHit:
    t: float
    wall: tuple            # ('hole', h, k)
    cell: tuple[int, int]
    point: tuple[float, float]
    edge: tuple[float, float, float, float]
    corner: bool


def _select_hit(cands) -> Optional[PlanarHit]:
    """Minimum-time candidate with corner and tie classification.

    Candidates are (t, h, cell, k, s, ax, ay, bx, by).
    """
    if not cands:
        return None
    cands.sort(key=lambda c: c[0])
    t0, h, cell, k, ss, ax, ay, bx, by = cands[0]
    tie = False
    for c in cands[1:]:
        if c[0] - t0 >= TIE_TOL:
            break
        if (c[1], c[2], c[3]) != (h, cell, k):
            tie = True
    hx = ax + ss * (bx - ax)
    hy = ay + ss * (by - ay)
    corner = (tie or math.hypot(hx - ax, hy - ay) < CORNER_TOL
              or math.hypot(hx - bx, hy - by) < CORNER_TOL)
    return PlanarHit(t0, ("hole", h, k), cell, (hx, hy),
                     (ax, ay, bx, by), corner)


def _cell_walk(uv, px, py, dx, dy, t_cap):
    """Yield (i, j, t_entry) for lattice cells along the ray, in order."""
    m00, m01, m10, m11 = uv
    u = m00 * px + m01 * py
    v = m10 * px + m11 * py
    du = m00 * dx + m01 * dy
    dv = m10 * dx + m11 * dy
    i, j = math.floor(u), math.floor(v)
    t = 0.0
    step_u = 1 if du > 0 else -1
    step_v = 1 if dv > 0 else -1
    big = 1.0e308
    td_u = abs(1.0 / du) if du != 0.0 else big
    td_v = abs(1.0 / dv) if dv != 0.0 else big
    if du > 0:
        tm_u = (i + 1 - u) / du
    elif du < 0:
        tm_u = (i - u) / du
    else:
        tm_u = big
    if dv > 0:
        tm_v = (j + 1 - v) / dv
    elif dv < 0:
        tm_v = (j - v) / dv
    else:
        tm_v = big
    while t <= t_cap:
        yield (i, j, t)
        if tm_u < tm_v - 1e-15:
            t = tm_u
            i += step_u
            tm_u += td_u
        elif tm_v < tm_u - 1e-15:
            t = tm_v
            j += step_v
            tm_v += td_v
        else:
            t = tm_u
            i += step_u
            j += step_v
            tm_u += td_u
            tm_v += td_v


def _copies_of_cell(geom, i, j):
    for h, (vx, vy, offs) in enumerate(geom.obstacles):
        for (mi, mj) in offs:
            yield h, (i - mi, j - mj)


def first_hit_lattice(model, p, direction, t_cap: float = 1e7,
                      exclude: Optional[tuple] = None) -> Optional[PlanarHit]:
    """First wall hit of the planar ray, walking lattice cells in order."""
    if isinstance(model, ModelSurface):
        model = model.model
    geom = _planar_geom(model)
    px, py = float(p[0]), float(p[1])
    dx, dy = _unit_dir(direction)
    t1x, t1y = geom.t1
    t2x, t2y = geom.t2
    seen = set()
    cands = []
    best = math.inf
    for (i, j, t_in) in _cell_walk(geom.uv, px, py, dx, dy, t_cap):
        if t_in > best + TIE_TOL:
            break
        for h, cell in _copies_of_cell(geom, i, j):
            key = (h, cell)
            if key in seen:
                continue
            seen.add(key)
            vx, vy, _ = geom.obstacles[h]
            sx = t1x * cell[0] + t2x * cell[1]
            sy = t1y * cell[0] + t2y * cell[1]
            ex_k = exclude[2] if (exclude is not None
                                  and exclude[0] == h
                                  and exclude[1] == cell) else -1
            raw = []
            _copy_hits(px, py, dx, dy, vx, vy, sx, sy, t_cap, ex_k, raw)
            for (tt, k, ss, ax, ay, bx, by) in raw:
                cands.append((tt, h, cell, k, ss, ax, ay, bx, by))
                if tt < best:
                    best = tt
    return _select_hit(cands)


def first_hit_brute(model, p, direction, t_cap: float,
                    cells: Sequence[tuple[int, int]],
                    exclude: Optional[tuple] = None) -> Optional[PlanarHit]:
    """First wall hit testing every obstacle copy in the given cells."""
    if isinstance(model, ModelSurface):
        model = model.model
    geom = _planar_geom(model)
    px, py = float(p[0]), float(p[1])
    dx, dy = _unit_dir(direction)
    t1x, t1y = geom.t1
    t2x, t2y = geom.t2
    cands = []
    for cell in cells:
        for h, (vx, vy, _) in enumerate(geom.obstacles):
            sx = t1x * cell[0] + t2x * cell[1]
            sy = t1y * cell[0] + t2y * cell[1]
            ex_k = exclude[2] if (exclude is not None
                                  and exclude[0] == h
                                  and exclude[1] == tuple(cell)) else -1
            raw = []
            _copy_hits(px, py, dx, dy, vx, vy, sx, sy, t_cap, ex_k, raw)
            for (tt, k, ss, ax, ay, bx, by) in raw:
                cands.append((tt, h, tuple(cell), k, ss, ax, ay, bx, by))
    return _select_hit(cands)


def trace(model, p, direction, budget: int = 10 ** 4,
          t_max: Optional[float] = None) -> Trajectory:
    """Simulate in the plane against the lattice of obstacle copies.

    State is the planar point alone; cells and labels on the returned
    rows are derived (cell of the struck copy, composition of the struck
    walls) so the rows line up with ``cover_trace`` output.
    """
    if isinstance(model, ModelSurface):
        model = model.model
    tb = _tables(model)
    geom = _planar_geom(model)
    px, py = float(p[0]), float(p[1])
    dx, dy = _unit_dir(direction)
    l0 = cell_of_point(model, p)
    q0 = (px - geom.t1[0] * l0[0] - geom.t2[0] * l0[1],
          py - geom.t1[1] * l0[0] - geom.t2[1] * l0[1])
    _check_free(model, q0)
    if t_max is None:
        t_max = math.inf

    wall_index = {org: i for i, org in enumerate(tb.origins)
                  if org[0] == "hole"}
    rows = []
    t = 0.0
    rr, kk = 0, 0
    last = None
    status = 1
    while True:
        cap = min(t_max - t, 1e7)
        hit = first_hit_lattice(model, (px, py), (dx, dy), cap, exclude=last)
        if hit is None or t + hit.t > t_max:
            if math.isfinite(t_max):
                px += (t_max - t) * dx
                py += (t_max - t) * dy
                t = t_max
            status = 1
            break
        t += hit.t
        px, py = hit.point
        if hit.corner:
            status = 2
            break
        ax, ay, bx, by = hit.edge
        ex, ey = bx - ax, by - ay
        ln = math.hypot(ex, ey)
        ex, ey = ex / ln, ey / ln
        dn = 2.0 * (dx * ex + dy * ey)
        ndx, ndy = dn * ex - dx, dn * ey - dy
        nrm = math.hypot(ndx, ndy)
        dx, dy = ndx / nrm, ndy / nrm
        h, c, k = hit.wall[1], hit.cell, hit.wall[2]
        kk = (tb.reflk[wall_index[("hole", h, k)]] - kk) % tb.n
        rr = 1 - rr
        rows.append((t, px, py, dx, dy, c[0], c[1], rr, kk,
                     wall_index[("hole", h, k)]))
        last = (h, c, k)
        if len(rows) >= budget:
            status = 0
            break

    n = len(rows)
    extra = 1 if status != 0 else 0
    cols = [np.empty(n + 1 + extra, dtype=np.float64) for _ in range(5)] + \
        [np.empty(n + 1 + extra, dtype=np.int64) for _ in range(5)]
    dx0, dy0 = _unit_dir(direction)
    first = (0.0, q0[0], q0[1], dx0, dy0, l0[0], l0[1], 0, 0, -1)
    for c in range(10):
        cols[c][0] = first[c]
    t1x, t1y = geom.t1
    t2x, t2y = geom.t2
    for i, row in enumerate(rows):
        qx = row[1] - t1x * row[5] - t2x * row[6]
        qy = row[2] - t1y * row[5] - t2y * row[6]
        vals = (row[0], qx, qy, row[3], row[4], row[5], row[6],
                row[7], row[8], row[9])
        for c in range(10):
            cols[c][i + 1] = vals[c]
    if extra:
        l_end = cell_of_point(model, (px, py))
        vals = (t, px - t1x * l_end[0] - t2x * l_end[1],
                py - t1y * l_end[0] - t2y * l_end[1],
                dx, dy, l_end[0], l_end[1], rr, kk, -2)
        for c in range(10):
            cols[c][n + 1] = vals[c]
    return Trajectory(tb, _STATUS[status], direction, tuple(cols))


# ---------------------------------------------------------------------------
# statistics


def recurrence_stats(trajectory: Trajectory, eps: float) -> dict:
    """Return times of the stored trajectory into the ball of radius eps
    around its start point (entries after first leaving the ball)."""
    x, y = trajectory.planar()
    t = trajectory.t
    p0x, p0y = float(x[0]), float(y[0])
    eps = float(eps)
    returns = []
    wx = x[0] - p0x
    wy = y[0] - p0y
    inside = wx * wx + wy * wy - eps * eps < 0.0
    left = not inside
    for i in range(len(t) - 1):
        seg = float(t[i + 1] - t[i])
        if seg <= 0.0:
            continue
        dx, dy = float(trajectory.dx[i]), float(trajectory.dy[i])
        wx = float(x[i]) - p0x
        wy = float(y[i]) - p0y
        b = 2.0 * (wx * dx + wy * dy)
        c = wx * wx + wy * wy - eps * eps
        if not inside:
            disc = b * b - 4.0 * c
            if disc > 0.0:
                r1 = (-b - math.sqrt(disc)) * 0.5
                if 0.0 < r1 <= seg and left:
                    returns.append(float(t[i]) + r1)
        ce = c + b * seg + seg * seg
        new_inside = ce < 0.0
        if inside and not new_inside:
            left = True
        inside = new_inside
    return {"returned": bool(returns),
            "return_times": returns,
            "first_return_t": returns[0] if returns else None}


def diffusion_exponent(model, direction_count: int = 50,
                       horizon: float = 1e6, seed: int = 0,
                       start=None) -> tuple[float, list[dict]]:
    """Mean final-decade slope of the displacement envelope over seeded
    random directions, with the per-direction data."""
    tb = _tables(model)
    if start is None:
        start = free_point(tb.model)
    rng = random.Random(seed)
    thetas = [2.0 * math.pi * rng.random() for _ in range(direction_count)]
    rows = []
    slopes = []
    for theta in thetas:
        traj = cover_trace(tb.model, start, theta, budget=2 ** 62,
                           store=False, envelope_horizon=horizon)
        cps, env = traj.envelope
        s = envelope_slope(cps, env)
        if math.isfinite(s):
            slopes.append(s)
        rows.append({"direction": theta, "status": traj.status,
                     "t_end": float(traj.t[-1]), "envelope_slope": s,
                     "max_displacement": traj.max_displacement})
    mean = sum(slopes) / len(slopes) if slopes else math.nan
    return mean, rows


def direction_battery(model, directions: int = 100, budget: int = 10 ** 5,
                      eps: float = 1.0, seed: int = 0,
                      start=None) -> list[dict]:
    """Per-direction first-return and envelope-slope rows for seeded
    random directions; drives the stats file of the simulate command."""
    tb = _tables(model)
    if start is None:
        start = free_point(tb.model)
    rng = random.Random(seed)
    thetas = [2.0 * math.pi * rng.random() for _ in range(directions)]
    rows = []
    for theta in thetas:
        probe = cover_trace(tb.model, start, theta, budget=budget,
                            store=False, recurrence_eps=eps)
        t_end = float(probe.t[-1])
        slope = math.nan
        if t_end > 0.0:
            env_run = cover_trace(tb.model, start, theta, budget=2 ** 62,
                                  store=False, envelope_horizon=t_end)
            slope = envelope_slope(*env_run.envelope)
        rows.append({"direction": theta,
                     "returned": probe.first_return_t is not None,
                     "first_return_t": probe.first_return_t,
                     "envelope_slope": slope,
                     "status": probe.status,
                     "bounces": probe.bounces,
                     "t_end": t_end})
    return rows


def write_stats_csv(rows: Sequence[dict], target) -> None:
    """direction,returned,first_return_t,envelope_slope rows."""
    close = False
    if isinstance(target, str):
        target = open(target, "w")
        close = True
    try:
        target.write("direction,returned,first_return_t,envelope_slope\n")
        for r in rows:
            frt = r.get("first_return_t")
            slope = r.get("envelope_slope")
            target.write("%.17g,%s,%s,%s\n" % (
                r["direction"],
                "true" if r.get("returned") else "false",
                "%.17g" % frt if frt is not None else "",
                "%.17g" % slope if slope is not None
                and isinstance(slope, float) and math.isfinite(slope) else ""))
    finally:
        if close:
            target.close()
