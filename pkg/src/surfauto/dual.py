"""First-order dual numbers with two independent perturbation directions.

Used to push a full 2x2 Jacobian through compositions of chart maps and
map evaluations without finite differencing.  Components may be python
complex or mpmath numbers; arithmetic only uses +,-,*,/.
"""

import mpmath as mp


class Dual2:
    """a + dx*e1 + dy*e2 with e1^2 = e2^2 = e1*e2 = 0."""

    __slots__ = ("a", "dx", "dy")

    def __init__(self, a, dx=0, dy=0):
        self.a = a
        self.dx = dx
        self.dy = dy

    @staticmethod
    def lift(x):
        return x if isinstance(x, Dual2) else Dual2(x)

    def __add__(self, o):
        o = Dual2.lift(o)
        return Dual2(self.a + o.a, self.dx + o.dx, self.dy + o.dy)

    __radd__ = __add__

    def __sub__(self, o):
        o = Dual2.lift(o)
        return Dual2(self.a - o.a, self.dx - o.dx, self.dy - o.dy)

    def __rsub__(self, o):
        return Dual2.lift(o) - self

    def __mul__(self, o):
        o = Dual2.lift(o)
        return Dual2(self.a * o.a,
                     self.a * o.dx + self.dx * o.a,
                     self.a * o.dy + self.dy * o.a)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = Dual2.lift(o)
        inv = 1 / o.a
        inv2 = inv * inv
        return Dual2(self.a * inv,
                     (self.dx * o.a - self.a * o.dx) * inv2,
                     (self.dy * o.a - self.a * o.dy) * inv2)

    def __rtruediv__(self, o):
        return Dual2.lift(o) / self

    def __pow__(self, m):
        if not isinstance(m, int) or m < 0:
            raise TypeError("only nonnegative integer powers")
        out = Dual2(self.a * 0 + 1)
        base = self
        while m:
            if m & 1:
                out = out * base
            base = base * base
            m >>= 1
        return out

    def __neg__(self):
        return Dual2(-self.a, -self.dx, -self.dy)

    def __abs__(self):
        return abs(self.a)

    def __repr__(self):
        return f"Dual2({self.a!r}, {self.dx!r}, {self.dy!r})"


def value(x):
    """Scalar value of a possibly-dual number."""
    return x.a if isinstance(x, Dual2) else x


def richardson(eps, vals):
    """Neville extrapolation of vals(eps) to eps -> 0.

    Returns (limit, err_estimate): err is the change contributed by the
    last extrapolation order, a practical convergence measure.
    """
    eps = [mp.mpf(e) for e in eps]
    tbl = [list(vals)]
    m = len(vals)
    for lev in range(1, m):
        row = []
        for i in range(m - lev):
            e0, e1 = eps[i], eps[i + lev]
            row.append((e0 * tbl[lev - 1][i + 1] - e1 * tbl[lev - 1][i]) / (e0 - e1))
        tbl.append(row)
    limit = tbl[-1][0]
    err = abs(limit - tbl[-2][0]) if m >= 2 else mp.mpf(0)
    return limit, err
