"""The plane map family, its parameters, and its combinatorics at infinity.

The maps have the form

    f(x, y) = (y, -delta*x + c*y + sum_l a_l / y^l + 1 / y^k)

with even k, the sum over even l in [2, k-2].  For delta = 1 and an
admissible c (see :func:`admissible_c`), the restriction of f to the line
at infinity is a rotation of period n and the map lifts to an automorphism
of an iterated blowup of the plane; the blowup data is modelled in
:mod:`surfauto.charts` and :mod:`surfauto.picard`.

Evaluation routines are generic over the scalar type: python complex,
mpmath numbers and Dual2 jets all work, since only field operations are
used.  c is kept symbolic (j, n, sign) when given as a pair and evaluated
lazily at whatever working precision is requested.
"""

import json
import math
from dataclasses import dataclass, field
from math import gcd

import mpmath as mp

from .dual import value
from .errors import IndeterminacyError, OverflowEscape, ParamError, PeriodicityError, PoleError

MAGNITUDE_CAP = 1e100
DEFAULT_TOL = 1e-9


def _euler_phi(n):
    return sum(1 for j in range(1, n + 1) if gcd(j, n) == 1)


def candidate_c(n):
    """Values of c for which w -> c - 1/w has period n on the line at infinity.

    Returns the distinct values 2*cos(j*pi/n) over 0 < j < n coprime to n,
    sorted descending.  The set is symmetric under negation since
    2*cos((n-j)*pi/n) = -2*cos(j*pi/n).
    """
    if n < 2:
        raise ParamError("n must be >= 2")
    vals = []
    for j in range(1, n):
        if gcd(j, n) == 1:
            v = 2.0 * math.cos(math.pi * j / n)
            if not any(abs(v - u) < 1e-12 for u in vals):
                vals.append(v)
    return sorted(vals, reverse=True)


def admissible_c(n, tol=DEFAULT_TOL):
    """The subset of candidate_c(n) whose orbit at infinity closes up correctly.

    For even n every candidate qualifies (phi(n) values).  For odd n only
    the candidates whose orbit midpoint equals 1 survive (phi(n)/2 values).
    A count disagreeing with phi(n) resp. phi(n)/2 is reported, not forced.
    """
    cands = candidate_c(n)
    if n % 2 == 0:
        out = list(cands)
    else:
        out = []
        for c in cands:
            w = c
            for _ in range((n - 1) // 2 - 1):
                w = c - 1.0 / w
            if abs(w - 1.0) < math.sqrt(tol):
                out.append(c)
    expected = _euler_phi(n) if n % 2 == 0 else _euler_phi(n) // 2
    if len(out) != expected:
        import warnings

        warnings.warn(
            f"admissible c count {len(out)} differs from expected {expected} for n={n}",
            stacklevel=2,
        )
    return out


@dataclass(frozen=True)
class MapParams:
    """One member of the family: (n, k, c, a-coefficients, delta).

    c_spec is either a (j, sign) pair meaning c = sign*2*cos(j*pi/n),
    stored symbolically and evaluated lazily, or an explicit scalar (the
    jacobian-root variant with user-supplied c).
    """

    n: int
    k: int
    c_spec: object
    a: dict = field(default_factory=dict)
    delta: complex = 1
    validate: bool = True

    def __post_init__(self):
        if self.n < 2:
            raise ParamError("n must be >= 2")
        if self.k < 2 or self.k % 2 != 0:
            raise ParamError("k must be even and >= 2")
        if self.n * self.k <= self.k + 2:
            raise ParamError(f"(n,k)=({self.n},{self.k}) has entropy 0; need n*k > k+2")
        for l in self.a:
            if l % 2 != 0 or not (2 <= l <= self.k - 2):
                raise ParamError(f"a-index {l} must be even in [2, k-2]")
        if isinstance(self.c_spec, tuple):
            j, sign = self.c_spec
            if gcd(j, self.n) != 1 or not (0 < j < self.n):
                raise ParamError(f"c index j={j} must be coprime to n and in (0, n)")
            if sign not in (1, -1):
                raise ParamError("c sign must be +1 or -1")
        if self.validate and self.delta == 1:
            cv = self.c(dps=30)
            ok = any(abs(complex(cv) - u) < 1e-9 for u in admissible_c(self.n))
            if not ok:
                raise ParamError(f"c={complex(cv)} is not admissible for n={self.n}")
        if self.validate and self.delta != 1:
            infinity_orbit(self)  # raises PeriodicityError if not periodic

    def c(self, dps=None):
        """The rotation parameter c at the requested precision.

        With dps=None a float is returned; otherwise an mpmath value
        computed fresh at that precision (symbolic specs never freeze a
        low-precision constant).
        """
        if isinstance(self.c_spec, tuple):
            j, sign = self.c_spec
            if dps is None:
                return sign * 2.0 * math.cos(math.pi * j / self.n)
            with mp.workdps(dps):
                return sign * 2 * mp.cos(mp.pi * j / self.n)
        if dps is None:
            return self.c_spec
        with mp.workdps(dps):
            return mp.mpmathify(self.c_spec)

    def a_coeff(self, l, dps=None):
        v = self.a.get(l, 0)
        if dps is None:
            return v
        with mp.workdps(dps):
            return mp.mpmathify(v)

    def delta_value(self, dps=None):
        if dps is None:
            return self.delta
        with mp.workdps(dps):
            return mp.mpmathify(self.delta)

    # -- JSON parameter files ------------------------------------------------

    def to_json_dict(self):
        if isinstance(self.c_spec, tuple):
            j, sign = self.c_spec
            cj = {"j": j, "sign": "+" if sign > 0 else "-"}
        else:
            cj = float(self.c_spec.real if isinstance(self.c_spec, complex) else self.c_spec)
        d = complex(self.delta)
        return {
            "n": self.n,
            "k": self.k,
            "c": cj,
            "a": {str(l): [complex(v).real, complex(v).imag] for l, v in sorted(self.a.items())},
            "delta": [d.real, d.imag],
        }

    @classmethod
    def from_json_dict(cls, d):
        c = d["c"]
        if isinstance(c, dict):
            c_spec = (int(c["j"]), 1 if c.get("sign", "+") == "+" else -1)
        else:
            c_spec = float(c)
        a = {}
        for key, v in d.get("a", {}).items():
            a[int(key)] = complex(v[0], v[1]) if isinstance(v, (list, tuple)) else complex(v)
        a = {l: (v.real if v.imag == 0 else v) for l, v in a.items()}
        delta = d.get("delta", [1.0, 0.0])
        delta = complex(delta[0], delta[1]) if isinstance(delta, (list, tuple)) else complex(delta)
        if delta.imag == 0:
            delta = delta.real
        return cls(n=int(d["n"]), k=int(d["k"]), c_spec=c_spec, a=a, delta=delta)

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_json_dict(json.load(fh))


def figure1_params():
    """The shipped real example: n=2, k=4, c=0, a_2=-2.64."""
    return MapParams(n=2, k=4, c_spec=(1, 1), a={2: -2.64})


# -- map evaluation ----------------------------------------------------------


def eval_f(p, pt, tol=DEFAULT_TOL, dps=None):
    """One application of the map to an affine point (x, y).

    Raises PoleError for |y| below tol and OverflowEscape past the
    magnitude cap.  Works on any field-like scalars (complex, mpmath,
    Dual2 jets).
    """
    x, y = pt
    if abs(value(y)) < tol:
        raise PoleError(f"y={value(y)} within tol of the pole line")
    c = p.c(dps)
    d = p.delta_value(dps)
    yinv = 1 / y
    out = -d * x + c * y + yinv ** p.k
    for l in sorted(p.a):
        out = out + p.a_coeff(l, dps) * yinv ** l
    if abs(value(out)) > MAGNITUDE_CAP:
        raise OverflowEscape("image magnitude exceeds cap")
    return (y, out)


def eval_f_inverse(p, pt, tol=DEFAULT_TOL, dps=None):
    """Inverse map; for delta=1 this equals swap . f . swap."""
    X, Y = pt
    if abs(value(X)) < tol:
        raise PoleError(f"x={value(X)} within tol of the inverse pole line")
    c = p.c(dps)
    d = p.delta_value(dps)
    xinv = 1 / X
    out = c * X + xinv ** p.k - Y
    for l in sorted(p.a):
        out = out + p.a_coeff(l, dps) * xinv ** l
    out = out / d
    if abs(value(out)) > MAGNITUDE_CAP:
        raise OverflowEscape("image magnitude exceeds cap")
    return (out, X)


def proj_normalize(P):
    """Scale homogeneous coordinates so the max-modulus entry has modulus 1."""
    m = max(abs(z) for z in P)
    try:
        mval = float(m)
    except TypeError:
        mval = float(value(m))
    if mval == 0.0:
        raise IndeterminacyError("zero projective vector")
    sel = None
    for z in P:
        if abs(z) == m:
            sel = z
            break
    return tuple(z / sel for z in P)


def proj_equal(P, Q, tol=DEFAULT_TOL):
    """Projective equality via vanishing cross products."""
    x0, x1, x2 = P
    y0, y1, y2 = Q
    cross = (x0 * y1 - x1 * y0, x0 * y2 - x2 * y0, x1 * y2 - x2 * y1)
    scale = max(max(abs(z) for z in P), max(abs(z) for z in Q))
    return all(abs(c) <= tol * scale * scale for c in cross)


def eval_f_proj(p, P, tol=DEFAULT_TOL, dps=None):
    """The homogeneous degree-(k+1) form of the map on [x0:x1:x2].

    Maps {x2=0} to [0:0:1] and acts on {x0=0} by [0:1:w] -> [0:1:c-delta/w].
    Raises IndeterminacyError near [0:1:0], where all components vanish.
    """
    x0, x1, x2 = P
    k = p.k
    c = p.c(dps)
    d = p.delta_value(dps)
    y0 = x0 * x2 ** k
    y1 = x2 ** (k + 1)
    terms = [x1 * x2 ** k * (-d), x2 ** (k + 1) * c, x0 ** (k + 1)]
    for l in sorted(p.a):
        terms.append(p.a_coeff(l, dps) * x0 ** (l + 1) * x2 ** (k - l))
    y2 = terms[0]
    for t in terms[1:]:
        y2 = y2 + t
    img = (y0, y1, y2)
    # indeterminate iff the image cancels to the noise floor of the largest
    # intermediate term (smallness alone is legitimate deep in the tower)
    term_scale = max(abs(value(z)) for z in (y0, y1, *terms))
    floor = tol if dps is None else float(mp.mpf(10) ** (-(dps - 8)))
    if max(abs(value(z)) for z in img) <= floor * float(term_scale):
        raise IndeterminacyError("projective image vanishes: input at the indeterminacy point")
    return proj_normalize(img)


def affine_to_proj(pt):
    return (1, pt[0], pt[1])


def proj_to_affine(P, tol=DEFAULT_TOL):
    x0, x1, x2 = P
    if abs(value(x0)) < tol * max(abs(value(x1)), abs(value(x2)), 1):
        raise PoleError("point at infinity has no affine chart image")
    return (x1 / x0, x2 / x0)


# -- combinatorics at infinity ----------------------------------------------


@dataclass
class InfinityOrbit:
    """Forward orbit of [0:0:1] along the line at infinity: w_1 .. w_{n-1}."""

    w: list
    w_star: object  # midpoint value for odd n, else None


def infinity_orbit(p, dps=None, tol=DEFAULT_TOL):
    """Iterate w -> c - delta/w from w_1 = c; the orbit must end at 0.

    Raises PeriodicityError when |w_{n-1}| >= tol (c not admissible for
    this n / delta combination).
    """
    n = p.n
    with mp.workdps(dps or mp.mp.dps):
        c = p.c(dps)
        d = p.delta_value(dps)
        w = [c]
        for _ in range(n - 2):
            prev = w[-1]
            if abs(value(prev)) == 0:
                raise PeriodicityError("orbit at infinity hit the pole early")
            w.append(c - d / prev)
        end_tol = tol if dps is None else float(mp.mpf(10) ** (-(dps - 10)))
        if abs(value(w[-1])) >= end_tol:
            raise PeriodicityError(
                f"orbit at infinity does not return to the base point: |w_{n-1}| = {abs(value(w[-1]))}"
            )
    w_star = w[(n - 1) // 2 - 1] if n % 2 == 1 else None
    return InfinityOrbit(w=w, w_star=w_star)


# -- pole coefficients -------------------------------------------------------


def q_value(p, x, y, dps=None):
    """The normalizing polynomial 1 + sum_j a_j y^(k-j) - x y^k + c y^(k+1)."""
    k = p.k
    out = 1 + p.c(dps) * y ** (k + 1) - x * y ** k
    for l in sorted(p.a):
        out = out + p.a_coeff(l, dps) * y ** (k - l)
    return out


@dataclass
class BCoefficients:
    """Series coefficients b_0..b_2k of y^k / q(x, y) through order 2k.

    The x-linear part of the order-2k coefficient is exactly 1 and is not
    stored; b[2k] is its constant part.
    """

    b: list


def center_series(p, dps=None):
    """Compute the b-coefficients by truncated series inversion of q.

    Coefficients are (constant, x-linear) pairs; x only enters q through
    -x*y^k, so no x^2 terms arise below the truncation order and products
    may drop them.
    """
    k = p.k
    zero = mp.mpf(0) if dps is not None else 0.0

    def conv(v):
        if dps is not None:
            return mp.mpmathify(v)
        v = complex(v)
        return v if v.imag else v.real

    with mp.workdps(dps or 15):
        u = {}
        for l in sorted(p.a):
            u[k - l] = (conv(p.a_coeff(l, dps)), zero)
        const, _ = u.get(k, (zero, zero))
        u[k] = (const, conv(-1))
        const, xlin = u.get(k + 1, (zero, zero))
        u[k + 1] = (const + conv(p.c(dps)), xlin)

        order = 2 * k
        v = [(conv(1), zero)] + [None] * order
        for m in range(1, order + 1):
            c0 = zero
            c1 = zero
            for i, (a0, a1) in u.items():
                if 1 <= i <= m:
                    b0, b1 = v[m - i]
                    c0 = c0 + a0 * b0
                    c1 = c1 + a0 * b1 + a1 * b0  # x^2 cross term dropped
            v[m] = (-c0, -c1)

        b = [zero] * (2 * k + 1)
        b[k] = conv(1)
        for i in range(1, k + 1):
            b[k + i] = v[i][0]
        # structural checks: pure-x normalization and parity
        assert abs(v[k][1] - 1) < 1e-9, "x-linear part of the order-2k coefficient must be 1"
        for i in range(1, k):
            assert abs(v[i][1]) < 1e-9
    return BCoefficients(b=b)
