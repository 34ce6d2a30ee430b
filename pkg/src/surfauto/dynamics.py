"""Fixed points, multipliers, trace separation, orbits, and unstable
manifolds of the plane maps."""

import cmath
from dataclasses import dataclass, field

import numpy as np

from .dual import Dual2
from .errors import DegenerateError, NotSaddleError, ParamError, PoleError
from .mapfamily import MAGNITUDE_CAP, MapParams, eval_f
from .polyroots import aberth_roots, cluster_roots

_ELLIPTIC_MARGIN = 1e-9


@dataclass
class FixedPointRecord:
    zeta: complex
    trace: complex
    eigenvalues: tuple
    type: str            # saddle | elliptic | parabolic | complex
    multiplicity: int = 1


def fixed_point_polynomial(p):
    """(2-c) z^(k+1) - sum_j a_j z^(k-j) - 1, descending coefficients.

    The diagonal fixed-point equation cleared of denominators.  Only valid
    for delta = 1, where fixed points sit on the diagonal.
    """
    if complex(p.delta) != 1 + 0j:
        raise ParamError("diagonal fixed-point polynomial requires delta = 1")
    c = complex(p.c())
    if abs(c - 2) < 1e-14:
        raise DegenerateError("c = 2 degenerates the fixed-point polynomial")
    coeffs = [2 - c] + [0.0] * p.k + [-1.0]
    for l, al in p.a.items():
        # a_l z^(k-l): position k+1-(k-l) from the left
        coeffs[l + 1] = -complex(al)
    return coeffs


def jacobian(p, pt, tol=1e-12):
    """Df at an affine point: [[0, 1], [-delta, d2]] with the closed-form
    partial in the second slot; determinant is delta identically."""
    x, y = pt
    if abs(y) < tol:
        raise PoleError("jacobian undefined on the pole line")
    c = complex(p.c())
    d2 = c
    for l, al in p.a.items():
        d2 -= l * complex(al) / y ** (l + 1)
    d2 -= p.k / y ** (p.k + 1)
    return np.array([[0, 1], [-complex(p.delta), d2]], dtype=complex)


def jacobian_dual(p, pt):
    """Same Jacobian by forward-mode differentiation of eval_f; used as a
    consistency oracle for the closed form."""
    x, y = pt
    xd = Dual2(complex(x), 1, 0)
    yd = Dual2(complex(y), 0, 1)
    fx, fy = eval_f(p, (xd, yd))
    return np.array([[fx.dx, fx.dy], [fy.dx, fy.dy]], dtype=complex)


def _classify(zeta, trace, delta):
    if abs(zeta.imag) > 1e-9:
        return "complex"
    if abs(complex(delta) - 1) > 1e-12 or abs(trace.imag) > 1e-9:
        return "complex"
    t = trace.real
    if abs(t) < 2 - _ELLIPTIC_MARGIN:
        return "elliptic"
    if abs(t) > 2 + _ELLIPTIC_MARGIN:
        return "saddle"
    return "parabolic"


def fixed_points(p, residual_tol=1e-10):
    """All k+1 diagonal fixed points with multiplier data, sorted by
    (Re, Im); each is validated by direct evaluation of the map."""
    coeffs = fixed_point_polynomial(p)
    roots = aberth_roots(coeffs)
    clustered = cluster_roots(roots, sep=1e-7)
    records = []
    for zeta, mult in clustered:
        img = eval_f(p, (zeta, zeta))
        res = max(abs(img[0] - zeta), abs(img[1] - zeta))
        if res > residual_tol:
            raise AssertionError(f"fixed-point residual {res} at {zeta}")
        J = jacobian(p, (zeta, zeta))
        tr = complex(np.trace(J))
        disc = cmath.sqrt(tr * tr - 4 * complex(p.delta))
        ev = ((tr + disc) / 2, (tr - disc) / 2)
        records.append(FixedPointRecord(zeta=zeta, trace=tr, eigenvalues=ev,
                                        type=_classify(zeta, tr, p.delta),
                                        multiplicity=mult))
    records.sort(key=lambda r: (r.zeta.real, r.zeta.imag))
    assert sum(r.multiplicity for r in records) == p.k + 1
    return records


def _traces_for(p):
    return sorted((r.trace for r in fixed_points(p) for _ in range(r.multiplicity)),
                  key=lambda z: (z.real, z.imag))


def trace_map_rank(p, fd_step=1e-6, sv_tol=1e-8):
    """Rank of the parameter-to-traces map at a = 0, two ways.

    Analytic matrix: (k - l) / zeta^(l+1) over the k+1 fixed points and the
    k/2 - 1 active parameter slots.  The finite-difference matrix recomputes
    the trace multiset under perturbed a_l with roots matched by proximity.
    Returns (rank, max entrywise difference between the two matrices).
    """
    if any(abs(complex(v)) > 1e-14 for v in p.a.values()):
        raise ParamError("trace rank is evaluated at the zero parameter point")
    k = p.k
    params = [l for l in range(2, k - 1) if l % 2 == 0]
    base = fixed_points(p)
    zetas = [r.zeta for r in base]
    analytic = np.array([[(k - l) / z ** (l + 1) for l in params] for z in zetas],
                        dtype=complex)
    numeric = np.zeros_like(analytic)
    for col, l in enumerate(params):
        plus = MapParams(p.n, p.k, p.c_spec, {l: fd_step}, p.delta, validate=False)
        minus = MapParams(p.n, p.k, p.c_spec, {l: -fd_step}, p.delta, validate=False)
        tp = _match_traces(zetas, plus)
        tm = _match_traces(zetas, minus)
        numeric[:, col] = (np.array(tp) - np.array(tm)) / (2 * fd_step)
    if analytic.size:
        sv = np.linalg.svd(analytic, compute_uv=False)
        rank = int(np.sum(sv > sv_tol * sv[0]))
        agree = float(np.max(np.abs(analytic - numeric)))
    else:
        rank, agree = 0, 0.0
    return rank, agree


def _match_traces(ref_zetas, p):
    recs = fixed_points(p)
    zs = [r.zeta for r in recs]
    out = []
    for z0 in ref_zetas:
        i = min(range(len(zs)), key=lambda i: abs(zs[i] - z0))
        out.append(recs[i].trace)
    return out


def trace_set_separation(p, p_hat, tol=1e-8):
    """Whether two parameter choices have distinguishable trace multisets.

    Optimal matching distance (Hungarian assignment on |t_i - t_hat_j|);
    returns (separated, distance)."""
    if (p.n, p.k) != (p_hat.n, p_hat.k):
        raise ParamError("trace separation compares members of one family")
    from scipy.optimize import linear_sum_assignment

    t1 = np.array(_traces_for(p))
    t2 = np.array(_traces_for(p_hat))
    cost = np.abs(t1[:, None] - t2[None, :])
    rows, cols = linear_sum_assignment(cost)
    dist = float(cost[rows, cols].max())
    return dist > tol, dist


# -- orbits and manifolds -------------------------------------------------------


@dataclass
class OrbitResult:
    points: np.ndarray   # shape (m, 2); real dtype when inputs real
    status: str          # completed | escaped | pole


def iterate_orbit(p, pt0, m, pole_tol=1e-12):
    """Forward orbit of an affine point; stops on escape past the magnitude
    cap or on reaching the pole line.  Real data stays real exactly."""
    real = (abs(complex(pt0[0]).imag) == 0 and abs(complex(pt0[1]).imag) == 0
            and all(abs(complex(v).imag) == 0 for v in p.a.values())
            and abs(complex(p.delta).imag) == 0 and complex(p.delta).real == 1)
    x, y = (float(complex(pt0[0]).real), float(complex(pt0[1]).real)) if real \
        else (complex(pt0[0]), complex(pt0[1]))
    c = p.c() if not isinstance(p.c(), complex) else p.c()
    if real:
        c = float(complex(c).real)
        a_items = [(l, float(complex(v).real)) for l, v in sorted(p.a.items())]
    else:
        a_items = [(l, complex(v)) for l, v in sorted(p.a.items())]
    pts = [(x, y)]
    status = "completed"
    for _ in range(m):
        if abs(y) < pole_tol:
            status = "pole"
            break
        yinv = 1.0 / y
        nxt = -x + c * y + yinv ** p.k
        for l, al in a_items:
            nxt += al * yinv ** l
        x, y = y, nxt
        if abs(x) > MAGNITUDE_CAP or abs(y) > MAGNITUDE_CAP:
            status = "escaped"
            break
        pts.append((x, y))
    arr = np.array(pts, dtype=float if real else complex)
    return OrbitResult(points=arr, status=status)


@dataclass
class Polyline:
    points: np.ndarray
    arclength: np.ndarray
    meta: dict = field(default_factory=dict)


def unstable_manifold(p, fp, arclen=20.0, spacing=0.05, seed_scale=1e-6,
                      max_points=1_000_000):
    """Trace the unstable manifold of a saddle by iterating a fundamental
    segment along the unstable eigenvector, refining in seed space until
    consecutive image points are closer than `spacing`.

    The stable manifold is the coordinate swap of the result (the family is
    reversible).  Escaped or pole-hitting branches are truncated.
    """
    if fp.type != "saddle":
        raise NotSaddleError(f"fixed point {fp.zeta} is {fp.type}")
    z = complex(fp.zeta)
    J = jacobian(p, (z, z))
    evals, evecs = np.linalg.eig(J)
    iu = int(np.argmax(np.abs(evals)))
    lam = evals[iu].real
    vec = evecs[:, iu].real
    vec = vec / np.linalg.norm(vec)
    x0 = np.array([z.real, z.real])

    def step(q):
        try:
            img = eval_f(p, (q[0], q[1]))
        except Exception:
            return None
        if max(abs(img[0]), abs(img[1])) > 1e6:
            return None
        return np.array([img[0].real if isinstance(img[0], complex) else img[0],
                         img[1].real if isinstance(img[1], complex) else img[1]])

    # fundamental domain [p1, f(p1)] with p1 on the eigenvector: successive
    # image batches then join exactly (f^i of the s=1 end is f^(i+1) of s=0)
    p1 = x0 + seed_scale * vec
    fp1 = step(p1)
    if fp1 is None:
        raise NotSaddleError("seed segment leaves the finite window immediately")
    seg = fp1 - p1

    def manifold_point(s, iters):
        q = p1 + s * seg
        for _ in range(iters):
            q = step(q)
            if q is None:
                return None
        return q

    pts = [x0.copy(), p1.copy()]
    total = float(np.linalg.norm(p1 - x0))
    iters = 0
    left_window = False
    while total < arclen and len(pts) < max_points and not left_window:
        # sample the fundamental seed interval adaptively at this iterate depth
        stack = [(0.0, manifold_point(0.0, iters), 1.0, manifold_point(1.0, iters))]
        acc = []
        hole_s = None  # first seed parameter whose orbit leaves the window
        guard = 0
        while stack and guard < 200000:
            guard += 1
            sa_, qa, sb, qb = stack.pop()
            if qa is None or qb is None:
                # the branch escapes (pole kick or magnitude cap): truncate
                # here rather than jumping the gap
                hole_s = sa_ if hole_s is None else min(hole_s, sa_)
                continue
            if np.linalg.norm(qb - qa) <= spacing or (sb - sa_) < 1e-14:
                acc.append((sa_, qa))
                continue
            sm = 0.5 * (sa_ + sb)
            qm = manifold_point(sm, iters)
            stack.append((sm, qm, sb, qb))
            stack.append((sa_, qa, sm, qm))
        acc.sort(key=lambda kv: kv[0])
        for s, q in acc:
            if hole_s is not None and s >= hole_s:
                left_window = True
                break
            d = np.linalg.norm(q - pts[-1])
            if d == 0.0:
                continue
            pts.append(q)
            total += d
            if total >= arclen or len(pts) >= max_points:
                break
        iters += 1
        if iters > 400:
            break
    arr = np.array(pts)
    arc = np.concatenate([[0.0], np.cumsum(np.linalg.norm(np.diff(arr, axis=0), axis=1))])
    return Polyline(points=arr, arclength=arc,
                    meta={"fixed_point": [z.real, z.real],
                          "eigenvalue": lam,
                          "seed_scale": seed_scale,
                          "spacing": spacing})
