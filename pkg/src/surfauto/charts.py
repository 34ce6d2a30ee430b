"""Local coordinate charts of the iterated blowup tower and the induced
fiber-to-fiber maps.

Tower layout: over each of the n orbit points at infinity (limb s) sits a
chain of 2k+1 exceptional fibers F^j_s.  Level-1 charts are (eta_1, t_1)
with the fiber at t_1 = 0; level j >= 2 charts are (xi_j, x_j) with the
fiber at x_j = 0 and the recursion

    xi_{j}   = xi_{j+1} * x  +  beta(s, j),      x constant down the tower,

seeded by (xi_1, x_1) = (t_1, eta_1).  The blowup center on F^j_s is at
fiber coordinate beta(s, j) = (+-) (w_1...w_{s-1})^(j-2) * b_{j-1}; the
shift to b_{j-1} (not b_j) is what makes the exceptional curve land on the
next center at every level, which is the whole point of the construction.

All numeric work here runs in mpmath at a working precision scaled to the
tower depth: inverting a depth-j chart near a fiber at transverse distance
eps cancels roughly j*log10(1/eps) digits, which double precision cannot
survive for k >= 4.
"""

from dataclasses import dataclass, replace
from typing import NamedTuple

import mpmath as mp

from .dual import Dual2, richardson, value
from .errors import ChartDomainError, ExtrapolationError, ParamError, PoleError
from .mapfamily import center_series, eval_f_proj, infinity_orbit, proj_normalize


class ChartId(NamedTuple):
    """kind: 'tower' (limb s, level j), 'base' (pre-blowup chart at limb s),
    or 'affine' (the finite chart [1:x:y])."""

    kind: str
    s: int = 0
    j: int = 0


class ChartPoint(NamedTuple):
    """u: coordinate along the fiber (xi_j, eta_1, or the base-curve
    coordinate); v: transverse coordinate (x_j, t_1, or t).  v = 0 lies on
    the blown-down locus."""

    u: object
    v: object


def default_dps(k, eps_min=1e-7):
    """Working precision adequate for full-depth chart inversions.

    Budgeted for lifts down to eps_min: inverting level j at transverse
    distance eps cancels about j*log10(1/eps) digits."""
    import math

    digits_lost = (2 * k + 3) * int(round(-math.log10(eps_min)))
    return max(60, digits_lost + 45)


@dataclass(frozen=True)
class CenterTable:
    """Blowup centers beta(s, j) plus the orbit and series data they come from."""

    n: int
    k: int
    dps: int
    w: tuple          # w_1 .. w_{n-1}
    b: tuple          # b_0 .. b_2k
    beta: dict        # (s, j) -> center on F^j_s, 1 <= j <= 2k

    @classmethod
    def build(cls, p, dps=None):
        dps = dps or default_dps(p.k)
        with mp.workdps(dps):
            w = [mp.mpmathify(x) for x in infinity_orbit(p, dps=dps).w]
            b = list(center_series(p, dps=dps).b)
            beta = {}
            for s in range(p.n):
                W = mp.mpf(1)
                for t in range(1, s):
                    W *= w[t - 1]
                for j in range(1, 2 * p.k + 1):
                    base = b[j - 1]
                    if s == 0:
                        beta[(s, j)] = base
                    else:
                        sign = -1 if (1 - j) % 2 else 1
                        beta[(s, j)] = sign * W ** (j - 2) * base
        return cls(n=p.n, k=p.k, dps=dps, w=tuple(w), b=tuple(b), beta=beta)

    def tampered(self, s, j, value):
        """Copy with one center overridden; negative-control hook for the
        verification suite."""
        beta = dict(self.beta)
        beta[(s, j)] = value
        return replace(self, beta=beta)

    def all_chart_ids(self):
        ids = [ChartId("affine")]
        ids += [ChartId("base", s) for s in range(self.n)]
        ids += [ChartId("tower", s, j) for s in range(self.n) for j in range(1, 2 * self.k + 2)]
        return ids


def chart_to_plane(table, cid, pt):
    """Compose the blowdown maps into homogeneous coordinates.

    Points with v = 0 land exactly on the blown-down image (the limb base
    point for tower charts).  Scalars may be mpmath numbers or Dual2 jets.
    """
    u, v = pt.u, pt.v
    if cid.kind == "affine":
        return proj_normalize((_one(u), u, v))
    s = cid.s
    if cid.kind == "base":
        t1, along = v, u
    else:
        j = cid.j
        if j == 1:
            t1, e1 = v, u
        else:
            xi, x = u, v
            for m in range(j - 1, 0, -1):
                xi = xi * x + table.beta[(s, m)]
            t1, e1 = xi, x
        if s == 0:
            return proj_normalize((t1, t1 * e1, _one(t1)))
        return proj_normalize((t1, _one(t1), t1 * e1 + table.w[s - 1]))
    if s == 0:
        return proj_normalize((t1, along, _one(t1)))
    return proj_normalize((t1, _one(t1), along))


def _one(sample):
    """Multiplicative unit matching the scalar type of sample."""
    if isinstance(sample, Dual2):
        return Dual2(sample.a * 0 + 1)
    return sample * 0 + 1


def plane_to_chart(table, cid, P, floor=None):
    """Invert chart_to_plane; ChartDomainError when a division degenerates.

    The floor defaults to 10^-(dps-8): far below any legitimate transverse
    scale at the working precision, so only genuinely blown-down points
    trip it.
    """
    if floor is None:
        floor = mp.mpf(10) ** (-(table.dps - 8))
    x0, x1, x2 = P

    def div(a, b):
        if abs(value(b)) < floor:
            raise ChartDomainError(f"division by {value(b)} in chart {cid}")
        return a / b

    if cid.kind == "affine":
        return ChartPoint(div(x1, x0), div(x2, x0))
    s = cid.s
    if s == 0:
        t = div(x0, x2)
        along = div(x1, x2)
    else:
        t = div(x0, x1)
        along = div(x2, x1)
    if cid.kind == "base":
        return ChartPoint(along, t)
    j = cid.j
    if s == 0:
        t1, e1 = t, div(along, t)
    else:
        t1, e1 = t, div(along - table.w[s - 1], t)
    if j == 1:
        return ChartPoint(e1, t1)
    xi, x = t1, e1
    for m in range(1, j):
        xi = div(xi - table.beta[(s, m)], x)
    return ChartPoint(xi, x)


# -- the fiber-to-fiber transition table --------------------------------------

SIGMA1 = ("sigma1",)
SIGMA2 = ("sigma2",)


def fiber_target(n, k, s, j):
    """Where the fiber F^j_s is sent: the scheme of invariant cycles."""
    if j == 2 * k + 1:
        return SIGMA1 if s == n - 1 else ("fiber", s + 1, j)
    if s < n - 1:
        return ("fiber", s + 1, j)
    if j == 1:
        return ("fiber", 0, 1)
    return ("fiber", 0, 2 * k + 2 - j)


def fiber_transition_closed(table, s, j, xi, pole_tol=1e-12):
    """Closed form of the induced map on fiber coordinates.

    Source (s, j) is a fiber of the tower, or SIGMA2 with the coordinate x
    of [1:x:0].  Returns (target, value); target is ('fiber', s', j') or
    SIGMA1 (value z meaning [1:0:z]).
    """
    n, k = table.n, table.k
    b = table.b
    if (s, j) == SIGMA2 or s == "sigma2":
        return ("fiber", 0, 2 * k + 1), xi + b[2 * k]
    if not (0 <= s < n and 1 <= j <= 2 * k + 1):
        raise ParamError(f"fiber ({s},{j}) outside the tower")
    tgt = fiber_target(n, k, s, j)
    if s == 0 and n > 1:
        if j == 1:
            return tgt, -xi
        sign = -1 if (1 - j) % 2 else 1
        return tgt, sign * xi
    if 1 <= s <= n - 2:
        ws = table.w[s - 1]
        if j == 1:
            return tgt, xi / ws
        return tgt, ws ** (j - 2) * xi
    # s = n - 1: return over the flip to limb 0
    if j == 1:
        return tgt, xi
    if j == 2 * k + 1:
        return tgt, xi - b[2 * k]
    if j == k + 1:
        if abs(value(xi) - 1) < pole_tol:
            raise PoleError("xi = 1 is the pole of the middle flip branch")
        return tgt, xi / (xi - 1)
    if j <= k:
        l = k + 1 - j
        if abs(value(xi)) < pole_tol:
            raise PoleError("xi = 0 is the pole of this flip branch")
        return tgt, b[k + l] + 1 / xi
    l = j - k - 1
    if abs(value(xi) - value(b[k + l])) < pole_tol:
        raise PoleError(f"xi = b_{k+l} is the pole of the inverse flip branch")
    return tgt, 1 / (xi - b[k + l])


DEFAULT_EPS_SEQ = (1e-3, 1e-4, 1e-5)


def fiber_transition_numeric(p, table, s, j, xi, eps_seq=DEFAULT_EPS_SEQ, conv_tol=1e-8):
    """Transition recomputed through the plane: lift off the fiber, apply
    the homogeneous map, re-express in the target chart, extrapolate the
    lift to zero.  Independent of the closed forms except for the target
    chart, which comes from the cycle scheme.

    Convergence: successive order-2 extrapolants (over a sliding window of
    the eps sequence, extended by further decades when needed) must agree
    below conv_tol; otherwise ExtrapolationError."""
    tgt = (("fiber", 0, 2 * table.k + 1) if (s, j) == SIGMA2 or s == "sigma2"
           else fiber_target(table.n, table.k, s, j))

    def sample(eps):
        if s == "sigma2" or (s, j) == SIGMA2:
            P = proj_normalize((mp.mpf(1), xi_mp, eps))
        else:
            P = chart_to_plane(table, ChartId("tower", s, j), ChartPoint(xi_mp, eps))
        Q = eval_f_proj(p, P, dps=table.dps)
        if tgt == SIGMA1:
            z0, z1, z2 = Q
            return z2 / z0
        _, s2, j2 = tgt
        return plane_to_chart(table, ChartId("tower", s2, j2), Q).u

    with mp.workdps(table.dps):
        xi_mp = mp.mpmathify(xi)
        eps_list = [mp.mpf(e) for e in eps_seq]
        vals = [sample(e) for e in eps_list]
        lim, _ = richardson(eps_list[-3:], vals[-3:])
        for _ in range(2):  # extend by up to two decades
            prev = lim
            eps_list.append(eps_list[-1] / 10)
            vals.append(sample(eps_list[-1]))
            lim, _ = richardson(eps_list[-3:], vals[-3:])
            if abs(lim - prev) < conv_tol:
                return tgt, lim, float(abs(lim - prev))
    raise ExtrapolationError(
        f"transition extrapolants keep moving by {float(abs(lim - prev))} > {conv_tol}")


# -- chart routing and parabolic checks ---------------------------------------

_ROUTE_CAP = 1e3


def _float_chart_coords(table_f, cid, Pf):
    """Chart coordinates in double precision, plus the base-chart transverse
    scale for tower charts; None when outside or unstable."""
    x0, x1, x2 = Pf
    try:
        if cid.kind == "affine":
            u, v = x1 / x0, x2 / x0
            return u, v, None
        s = cid.s
        if s == 0:
            t, along = x0 / x2, x1 / x2
        else:
            t, along = x0 / x1, x2 / x1
        if cid.kind == "base":
            return along, t, None
        j = cid.j
        if s == 0:
            t1, e1 = t, along / t
        else:
            t1, e1 = t, (along - table_f["w"][s - 1]) / t
        if j == 1:
            return e1, t1, abs(t)
        xi, x = t1, e1
        for m in range(1, j):
            xi = (xi - table_f["beta"][(s, m)]) / x
        return xi, x, abs(t)
    except (ZeroDivisionError, OverflowError):
        return None


def _float_shadow(table):
    return {
        "w": [complex(x) for x in table.w],
        "beta": {key: complex(v) for key, v in table.beta.items()},
    }


def route_chart(table, P, table_f=None, candidates=None):
    """Chart with the largest inversion margin for the plane point P.

    A chart accepts the point when its coordinates there stay moderate
    (within _ROUTE_CAP); among accepting charts the deepest tower level
    wins, since it fully resolves the infinitely-near structure the point
    is close to, with smaller coordinates breaking ties.  A point merely
    near a blowup center looks innocuous in the shallow chart but the
    deeper levels stay moderate exactly as far as the structure goes.
    Selection runs in double precision; values never do.
    """
    table_f = table_f or _float_shadow(table)
    candidates = candidates or table.all_chart_ids()
    Pf = tuple(_downcast(value(z)) for z in P)
    best, best_key = None, None
    for cid in candidates:
        coords = _float_chart_coords(table_f, cid, Pf)
        if coords is None:
            continue
        u, v, tbase = coords
        m = max(abs(u), abs(v))
        if m != m or m > _ROUTE_CAP:  # NaN or out of range
            continue
        # depth counts only when the point is genuinely near the blown-up
        # structure: small transverse coordinate and small base offset
        near = tbase is not None and abs(v) < 0.05 and tbase < 0.05
        depth = cid.j if cid.kind == "tower" and near else 0
        key = (-depth, m)
        if best_key is None or key < best_key:
            best_key, best = key, cid
    if best is None:
        raise ChartDomainError("no chart accepts this point")
    return best


def _downcast(z):
    try:
        return complex(z)
    except (OverflowError, ValueError):
        return complex(float("inf"), 0)


@dataclass
class ParabolicReport:
    """Outcome of a tangency check at one point."""

    chart: ChartId
    point: tuple
    steps: int
    max_deviation: float     # max |Df^steps - Id| entrywise
    fix_residual: float      # |f^steps(pt) - pt| in chart coordinates
    diag_n: tuple | None     # Df^(steps/2) diagonal when on the invariant line
    converged: bool


def _jet_orbit(p, table, cid, u0, v0, steps):
    """Route a 2-jet through `steps` map applications, ending in the start
    chart; returns the final Dual2 pair.  The half-way point is also
    re-expressed in the start chart so the half-way differential is
    readable there."""
    table_f = _float_shadow(table)
    candidates = table.all_chart_ids()
    u = Dual2(u0, mp.mpf(1), mp.mpf(0))
    v = Dual2(v0, mp.mpf(0), mp.mpf(1))
    cur = cid
    mid = None
    for step in range(steps):
        P = chart_to_plane(table, cur, ChartPoint(u, v))
        Q = eval_f_proj(p, P, dps=table.dps)
        force = step == steps - 1 or (step == steps // 2 - 1 and cid.kind == "base")
        nxt = cid if force else route_chart(table, Q, table_f, candidates)
        u, v = plane_to_chart(table, nxt, Q)
        cur = nxt
        if step == steps // 2 - 1:
            mid = (u, v, cur)
    return u, v, mid


def parabolic_check(p, table, cid, pt, steps=None, eps_seq=DEFAULT_EPS_SEQ, conv_tol=1e-8):
    """Check that f^(2n) fixes a point of the invariant configuration and is
    tangent to the identity there.

    For points on the invariant line (base chart, v = 0) the jet runs
    directly: the line is not blown down, so no lift is needed and the
    half-way differential (expected diag(+-1, 1)) is also reported.  For
    fiber points the transverse coordinate is lifted to each eps in
    eps_seq and the Jacobian is Richardson-extrapolated to the fiber.
    """
    n = p.n
    steps = steps or 2 * n
    with mp.workdps(table.dps):
        if cid.kind == "base":
            u, v, mid = _jet_orbit(p, table, cid, mp.mpmathify(pt.u), mp.mpf(0), steps)
            dev = max(abs(u.dx - 1), abs(u.dy), abs(v.dx), abs(v.dy - 1))
            fix = max(abs(u.a - pt.u), abs(v.a))
            diag = None
            if mid is not None:
                mu, mv, mcid = mid
                if mcid == cid:
                    # (transverse, along) multipliers: expected (+-1, 1)
                    diag = (complex(mv.dy), complex(mu.dx))
            return ParabolicReport(cid, (complex(pt.u), 0.0), steps,
                                   float(dev), float(fix), diag, True)
        jac_seq, val_seq = [], []
        for e in eps_seq:
            u, v, _ = _jet_orbit(p, table, cid, mp.mpmathify(pt.u), mp.mpf(e), steps)
            jac_seq.append((u.dx, u.dy, v.dx, v.dy))
            val_seq.append((u.a, v.a))
        ext = [richardson(eps_seq, [js[i] for js in jac_seq]) for i in range(4)]
        jac = [x[0] for x in ext]
        jac_err = max(x[1] for x in ext)
        u_lim, u_err = richardson(eps_seq, [vs[0] for vs in val_seq])
        v_lim, v_err = richardson(eps_seq, [vs[1] for vs in val_seq])
        dev = max(abs(jac[0] - 1), abs(jac[1]), abs(jac[2]), abs(jac[3] - 1))
        fix = max(abs(u_lim - pt.u), abs(v_lim))
        converged = max(float(jac_err), float(u_err), float(v_err)) < conv_tol
    return ParabolicReport(cid, (complex(pt.u), 0.0), steps,
                           float(dev), float(fix), None, converged)


def parabolic_levels(k):
    """Tower levels belonging to the tangent-to-identity configuration:
    level 1 and levels 3..2k-1.  Levels 2, 2k and 2k+1 are excluded."""
    return [1] + list(range(3, 2 * k))


# -- the reversing symmetry on fibers ------------------------------------------


def reversor_transition_closed(table, s, j, xi):
    """Fiber action of the coordinate swap: F^j_s -> F^j_{n-1-s}.

    Limbs 0 and n-1 exchange with coordinates preserved.  For middle limbs
    the multiplier is -(-w_s)^(j-2) at levels j >= 2 and -1/w_s at level 1
    (equivalently -(-w')^(2-j) with w' the target limb's orbit value)."""
    n = table.n
    tgt = ("fiber", n - 1 - s, j)
    if s in (0, n - 1):
        return tgt, xi
    ws = table.w[s - 1]
    if j == 1:
        return tgt, -xi / ws
    return tgt, -(-ws) ** (j - 2) * xi


def reversor_transition_numeric(table, s, j, xi, eps_seq=DEFAULT_EPS_SEQ, conv_tol=1e-8):
    """Swap-action on fibers computed through the plane, as an independent
    check of the closed form."""
    tgt = ("fiber", table.n - 1 - s, j)

    def sample(eps):
        P = chart_to_plane(table, ChartId("tower", s, j), ChartPoint(xi_mp, eps))
        x0, x1, x2 = P
        Q = proj_normalize((x0, x2, x1))
        return plane_to_chart(table, ChartId("tower", tgt[1], tgt[2]), Q).u

    with mp.workdps(table.dps):
        xi_mp = mp.mpmathify(xi)
        eps_list = [mp.mpf(e) for e in eps_seq]
        vals = [sample(e) for e in eps_list]
        lim, _ = richardson(eps_list[-3:], vals[-3:])
        for _ in range(2):
            prev = lim
            eps_list.append(eps_list[-1] / 10)
            vals.append(sample(eps_list[-1]))
            lim, _ = richardson(eps_list[-3:], vals[-3:])
            if abs(lim - prev) < conv_tol:
                return tgt, lim, float(abs(lim - prev))
    raise ExtrapolationError(f"reversor extrapolants keep moving by {float(abs(lim - prev))}")
