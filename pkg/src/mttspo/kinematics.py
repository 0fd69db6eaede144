"""Target motion and obstacle-unaware interception bounds.

Targets follow piecewise-linear trajectories and are visitable only inside
time windows. For a speed-capped agent, three quantities characterize travel
between two target-windows: the latest time it can still depart, the earliest
time it can arrive, and the shortest travel duration. All three reduce to
root analysis of the quadratic interception condition

    ||q_w + v (t - t_w) - p0||^2 <= v_max^2 (t - t0)^2

evaluated per linear piece of the target path, with a bisection fallback for
degenerate root structure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

INF = float("inf")

# absolute tolerance on quadratic discriminants / degenerate linear cases
DISC_TOL = 1e-12
# slack when checking that a departure time sits inside its window
WINDOW_TOL = 1e-9
# finite stand-in for +inf window ends wherever bounded arithmetic is needed;
# comparisons still use true infinity
ARITH_T_MAX = 1e9


class DomainError(ValueError):
    """Departure time lies outside the source window."""


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _norm(a):
    return math.sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2])


@dataclass(frozen=True)
class TargetTrajectory:
    """Piecewise-linear motion, constant extrapolation outside the waypoint span.

    waypoints: tuple of (time, (x, y, z)) with strictly increasing times.
    """

    waypoints: tuple

    def __post_init__(self):
        if not self.waypoints:
            raise ValueError("trajectory needs at least one waypoint")
        times = [w[0] for w in self.waypoints]
        for a, b in zip(times, times[1:]):
            if not b > a:
                raise ValueError("waypoint times must be strictly increasing")

    @staticmethod
    def from_points(points) -> "TargetTrajectory":
        return TargetTrajectory(tuple((float(t), (float(p[0]), float(p[1]), float(p[2]))) for t, p in points))

    def position(self, t: float):
        wps = self.waypoints
        if t <= wps[0][0]:
            return wps[0][1]
        if t >= wps[-1][0]:
            return wps[-1][1]
        # linear scan; trajectories are short at the scales this solver targets
        for (ta, pa), (tb, pb) in zip(wps, wps[1:]):
            if t <= tb:
                s = (t - ta) / (tb - ta)
                return (
                    pa[0] + s * (pb[0] - pa[0]),
                    pa[1] + s * (pb[1] - pa[1]),
                    pa[2] + s * (pb[2] - pa[2]),
                )
        return wps[-1][1]

    def pieces(self, lo: float, hi: float):
        """Yield (a, b, pos_a, vel) linear pieces covering [lo, hi] in time order.

        b may be +inf for the trailing constant piece. Empty pieces are skipped;
        zero-length clips at a single instant are kept so membership tests work.
        """
        if lo > hi:
            return
        wps = self.waypoints
        zero = (0.0, 0.0, 0.0)
        first_t, first_p = wps[0]
        if lo < first_t:
            a, b = lo, min(hi, first_t)
            yield (a, b, first_p, zero)
        for (ta, pa), (tb, pb) in zip(wps, wps[1:]):
            a, b = max(lo, ta), min(hi, tb)
            if a > b:
                continue
            inv = 1.0 / (tb - ta)
            vel = ((pb[0] - pa[0]) * inv, (pb[1] - pa[1]) * inv, (pb[2] - pa[2]) * inv)
            s = a - ta
            pos_a = (pa[0] + s * vel[0], pa[1] + s * vel[1], pa[2] + s * vel[2])
            yield (a, b, pos_a, vel)
        last_t, last_p = wps[-1]
        if hi > last_t:
            a = max(lo, last_t)
            yield (a, hi, last_p, zero)


@dataclass(frozen=True)
class TargetWindow:
    """One target paired with one of its visit windows. Target 0 is the depot."""

    target: int
    index: int
    t_lo: float
    t_hi: float
    traj: TargetTrajectory = field(compare=False)

    def __post_init__(self):
        if not self.t_lo <= self.t_hi:
            raise ValueError("window must satisfy t_lo <= t_hi")

    @property
    def ident(self):
        return (self.target, self.index)

    def position(self, t: float):
        return self.traj.position(t)

    def __repr__(self):  # pragma: no cover - debug aid
        return f"TW({self.target},{self.index},[{self.t_lo},{self.t_hi}])"


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise ValueError("interval must satisfy lo <= hi")


def depot_window(point, start: float = 0.0) -> TargetWindow:
    """The depot as a stationary fictitious target with window [start, inf)."""
    traj = TargetTrajectory(((0.0, (float(point[0]), float(point[1]), float(point[2]))),))
    return TargetWindow(0, 0, start, INF, traj)


def position(traj: TargetTrajectory, t: float):
    return traj.position(t)


def _earliest_on_piece(p0, t0, a, b, pos_a, vel, v_max):
    """Smallest t in [max(a, t0), b] with ||q(t) - p0|| <= v_max (t - t0), else inf."""
    lo = max(a, t0)
    if lo > b:
        return INF
    # q(t) = c + vel t  with  c = pos_a - vel a
    c = (pos_a[0] - vel[0] * a - p0[0], pos_a[1] - vel[1] * a - p0[1], pos_a[2] - vel[2] * a - p0[2])
    qa = _dot(vel, vel) - v_max * v_max
    qb = 2.0 * (_dot(c, vel) + v_max * v_max * t0)
    qc = _dot(c, c) - v_max * v_max * t0 * t0

    def val(t):
        return (qa * t + qb) * t + qc

    if val(lo) <= 0.0:
        return lo
    if abs(qa) <= DISC_TOL:
        # target speed equals v_max: interception condition is affine in t
        if qb < -DISC_TOL:
            t = -qc / qb
            if lo <= t <= b:
                return t
        return INF
    disc = qb * qb - 4.0 * qa * qc
    if disc < -DISC_TOL:
        return INF
    disc = max(disc, 0.0)
    sq = math.sqrt(disc)
    r1 = (-qb - sq) / (2.0 * qa)
    r2 = (-qb + sq) / (2.0 * qa)
    rlo, rhi = (r1, r2) if r1 <= r2 else (r2, r1)
    if qa < 0.0:
        # concave: feasible outside (rlo, rhi); since val(lo) > 0, earliest is rhi
        if lo < rhi <= b:
            return rhi
        return INF
    # convex (target faster than agent; defensive): feasible inside [rlo, rhi]
    if rhi < lo or rlo > b:
        return INF
    t = max(rlo, lo)
    return t if t <= b else INF


def earliest_point_arrival(p0, t0: float, v: TargetWindow, v_max: float) -> float:
    """Earliest in-window time a straight, speed-admissible run from (p0, t0) meets v."""
    if t0 == INF or t0 > v.t_hi:
        return INF
    for a, b, pos_a, vel in v.traj.pieces(max(v.t_lo, t0), v.t_hi):
        t = _earliest_on_piece(p0, t0, a, b, pos_a, vel, v_max)
        if t < INF:
            return t
    return INF


def _check_departure(u: TargetWindow, t0):
    if t0 is None:
        return u.t_lo
    if t0 == INF:
        return INF
    if t0 < u.t_lo - WINDOW_TOL or t0 > u.t_hi + WINDOW_TOL:
        raise DomainError(f"departure {t0} outside window [{u.t_lo}, {u.t_hi}]")
    return min(max(t0, u.t_lo), u.t_hi)


def earliest_arrival(u: TargetWindow, v: TargetWindow, t0, v_max: float) -> float:
    """Earliest time in v's window reachable after intercepting u at t0 (inf if none).

    t0 = None means departure at the window start. Obstacles are ignored.
    """
    if u.target == v.target:
        raise ValueError("earliest_arrival needs distinct targets")
    t0 = _check_departure(u, t0)
    if t0 == INF:
        return INF
    return earliest_point_arrival(u.traj.position(t0), t0, v, v_max)


def _latest_on_piece(qT, T, a, b, pos_a, vel, v_max):
    """Largest t0 in [a, b] with ||p(t0) - qT|| <= v_max (T - t0), else -inf."""
    if a > b:
        return -INF
    c = (pos_a[0] - vel[0] * a - qT[0], pos_a[1] - vel[1] * a - qT[1], pos_a[2] - vel[2] * a - qT[2])
    qa = _dot(vel, vel) - v_max * v_max
    qb = 2.0 * (_dot(c, vel) + v_max * v_max * T)
    qc = _dot(c, c) - v_max * v_max * T * T

    def val(t):
        return (qa * t + qb) * t + qc

    if val(b) <= 0.0:
        return b
    if abs(qa) <= DISC_TOL:
        if qb > DISC_TOL:
            t = -qc / qb
            if a <= t < b:
                return t
        return -INF
    disc = qb * qb - 4.0 * qa * qc
    if disc < -DISC_TOL:
        return -INF
    disc = max(disc, 0.0)
    sq = math.sqrt(disc)
    r1 = (-qb - sq) / (2.0 * qa)
    r2 = (-qb + sq) / (2.0 * qa)
    rlo = min(r1, r2)
    # feasibility is monotone nonincreasing in t0 for targets no faster than the
    # agent, so only the left root matters
    if a <= rlo < b:
        return rlo
    return -INF


def _latest_by_bisection(u: TargetWindow, v: TargetWindow, v_max: float) -> float:
    lo, hi = u.t_lo, min(u.t_hi, ARITH_T_MAX)
    if earliest_point_arrival(u.traj.position(lo), lo, v, v_max) == INF:
        return -INF
    if earliest_point_arrival(u.traj.position(hi), hi, v, v_max) < INF:
        return hi
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if earliest_point_arrival(u.traj.position(mid), mid, v, v_max) < INF:
            lo = mid
        else:
            hi = mid
    return lo


def latest_departure(u: TargetWindow, v: TargetWindow, v_max: float) -> float:
    """Latest t0 in u's window from which v is still interceptable (-inf if never).

    Since targets never outrun the agent, reaching v's position at the window
    end is equivalent to reaching v somewhere in the window, which collapses
    the 2-d feasibility region to a quadratic in t0 alone.
    """
    if u.target == v.target:
        raise ValueError("latest_departure needs distinct targets")
    T = v.t_hi
    if T == INF:
        # the window never closes; a stationary tail is always catchable
        return u.t_hi
    qT = v.traj.position(T)
    best = -INF
    for a, b, pos_a, vel in u.traj.pieces(u.t_lo, min(u.t_hi, T)):
        t0 = _latest_on_piece(qT, T, a, b, pos_a, vel, v_max)
        if t0 > best:
            best = t0
    if best == -INF:
        return -INF
    # closed form can go degenerate at tangency; verify and fall back
    if earliest_point_arrival(u.traj.position(best), best, v, v_max) == INF:
        return _latest_by_bisection(u, v, v_max)
    return best


def _min_duration_pair(pu, wu, qv, wv, ulo, uhi, vlo, vhi, v_max, s_cap):
    """Minimum travel duration restricted to a (u-piece, v-piece) pair.

    u departs at t0 in [ulo, uhi] from pu + wu t0; v is met at t0 + s in
    [vlo, vhi] at qv + wv (t0 + s). The feasible s-set is an interval because
    the pointwise-min distance is convex in s; ternary search locates the
    interior minimum and bisection the left boundary.
    """
    dom_lo = max(0.0, vlo - uhi)
    dom_hi = min(s_cap, vhi - ulo)
    if dom_lo > dom_hi:
        return INF

    base = (qv[0] - pu[0], qv[1] - pu[1], qv[2] - pu[2])
    dv = (wv[0] - wu[0], wv[1] - wu[1], wv[2] - wu[2])
    dv2 = _dot(dv, dv)

    def slack(s):
        # min over admissible t0 of ||base + wv s + dv t0|| - v_max s
        m = (base[0] + wv[0] * s, base[1] + wv[1] * s, base[2] + wv[2] * s)
        lo = max(ulo, vlo - s)
        hi = min(uhi, vhi - s)
        if dv2 <= DISC_TOL:
            t0 = lo
        else:
            t0 = -_dot(m, dv) / dv2
            t0 = min(max(t0, lo), hi)
        d = (m[0] + dv[0] * t0, m[1] + dv[1] * t0, m[2] + dv[2] * t0)
        return _norm(d) - v_max * s

    if slack(dom_lo) <= 0.0:
        return dom_lo
    # ternary search for the minimizer of the convex slack
    lo, hi = dom_lo, dom_hi
    for _ in range(200):
        if hi - lo <= 1e-12:
            break
        m1 = lo + (hi - lo) / 3.0
        m2 = hi - (hi - lo) / 3.0
        if slack(m1) <= slack(m2):
            hi = m2
        else:
            lo = m1
    s_star = 0.5 * (lo + hi)
    if slack(s_star) > 1e-12:
        return INF
    # left boundary of the feasible interval
    lo, hi = dom_lo, s_star
    for _ in range(100):
        mid = 0.5 * (lo + hi)
        if slack(mid) <= 0.0:
            hi = mid
        else:
            lo = mid
    return hi


def shortest_travel(u: TargetWindow, v: TargetWindow, v_max: float) -> float:
    """Minimum over departures t0 of earliest_arrival(u, v, t0) - t0 (inf if never)."""
    if u.target == v.target:
        raise ValueError("shortest_travel needs distinct targets")
    latest = latest_departure(u, v, v_max)
    if latest == -INF:
        return INF
    anchors = [latest, u.t_lo]
    s_cap = INF
    for t0 in anchors:
        t = earliest_point_arrival(u.traj.position(t0), t0, v, v_max)
        if t < INF:
            s_cap = min(s_cap, t - t0)
    if s_cap == INF:
        return INF
    if s_cap <= 0.0:
        return 0.0
    best = s_cap
    u_hi = min(u.t_hi, ARITH_T_MAX)
    v_hi = min(v.t_hi, ARITH_T_MAX)
    for ua, ub, upos, uvel in u.traj.pieces(u.t_lo, u_hi):
        pu = (upos[0] - uvel[0] * ua, upos[1] - uvel[1] * ua, upos[2] - uvel[2] * ua)
        for va, vb, vpos, vvel in v.traj.pieces(v.t_lo, v_hi):
            qv = (vpos[0] - vvel[0] * va, vpos[1] - vvel[1] * va, vpos[2] - vvel[2] * va)
            s = _min_duration_pair(pu, uvel, qv, vvel, ua, ub, va, vb, v_max, best)
            if s < best:
                best = s
    return max(best, 0.0)
