"""Exact integer / rational matrix and polynomial helpers.

Everything here is arbitrary-precision: python ints and Fractions only.
Matrices are lists of row lists.  Polynomials are coefficient lists in
descending degree order with integer entries unless noted.
"""

from fractions import Fraction


def identity(d):
    return [[1 if i == j else 0 for j in range(d)] for i in range(d)]


def transpose(A):
    return [list(r) for r in zip(*A)]


def mat_mul(A, B):
    m, inner, p = len(A), len(B), len(B[0])
    Bt = list(zip(*B))
    return [[sum(A[i][t] * Bt[j][t] for t in range(inner)) for j in range(p)]
            for i in range(m)]


def mat_vec(A, v):
    return [sum(row[j] * v[j] for j in range(len(v))) for row in A]


def mat_pow(A, m):
    d = len(A)
    out = identity(d)
    base = A
    while m:
        if m & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base)
        m >>= 1
    return out


def mat_eq(A, B):
    return all(ra == rb for ra, rb in zip(A, B))


def det_bareiss(A):
    """Exact determinant by fraction-free Gaussian elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(map(int, row)) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if M[r][k] != 0), None)
            if piv is None:
                return 0
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def leading_principal_minors(A):
    return [det_bareiss([row[:m] for row in A[:m]]) for m in range(1, len(A) + 1)]


def charpoly(A):
    """Characteristic polynomial det(xI - A), descending coefficients.

    Samuelson-Berkowitz: division-free, exact over the integers.
    """
    n = len(A)
    C = [1]
    for i in range(1, n + 1):
        Mi = [row[:i - 1] for row in A[:i - 1]]
        R = A[i - 1][:i - 1]
        S = [A[r][i - 1] for r in range(i - 1)]
        t = [1, -A[i - 1][i - 1]]
        v = S[:]
        for _ in range(2, i + 1):
            t.append(-sum(R[a] * v[a] for a in range(i - 1)))
            v = mat_vec(Mi, v) if Mi else []
        Cn = [0] * (i + 1)
        for m in range(i + 1):
            lo = max(0, m - len(C) + 1)
            for l in range(lo, min(len(t), m + 1)):
                Cn[m] += t[l] * C[m - l]
        C = Cn
    return C


def poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_divmod(num, den):
    """Polynomial division with integer quotient; remainder returned as-is."""
    num = list(num)
    q = []
    while len(num) >= len(den) and any(num):
        c, r = divmod(num[0], den[0])
        if r != 0:
            break
        q.append(c)
        for i in range(len(den)):
            num[i] -= c * den[i]
        num.pop(0)
    while num and num[0] == 0 and len(num) >= len(den):
        q.append(0)
        num.pop(0)
    return q, num


def poly_eval(coeffs, x):
    out = 0 * x
    for c in coeffs:
        out = out * x + c
    return out


def poly_derivative(coeffs):
    n = len(coeffs) - 1
    return [coeffs[i] * (n - i) for i in range(n)] if n > 0 else [0]


def _poly_rem_frac(a, b):
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    while len(a) >= len(b) and any(a):
        c = a[0] / b[0]
        for i in range(len(b)):
            a[i] -= c * b[i]
        a.pop(0)
        while a and a[0] == 0 and len(a) >= len(b):
            a.pop(0)
    while a and a[0] == 0:
        a.pop(0)
    return a


def poly_gcd(a, b):
    """Monic gcd over the rationals, returned as a primitive integer poly."""
    a = [Fraction(x) for x in a if True]
    b = [Fraction(x) for x in b if True]
    while b and any(b):
        a, b = b, _poly_rem_frac(a, b)
    if not a:
        return [1]
    lead = a[0]
    monic = [x / lead for x in a]
    from math import gcd as igcd

    den = 1
    for x in monic:
        den = den * x.denominator // igcd(den, x.denominator)
    ints = [int(x * den) for x in monic]
    content = 0
    for x in ints:
        content = igcd(content, abs(x))
    return [x // max(content, 1) for x in ints]


def poly_squarefree_part(coeffs):
    """coeffs / gcd(coeffs, coeffs'), primitive integer result."""
    from math import gcd as igcd

    g = poly_gcd(coeffs, poly_derivative(coeffs))
    if len(g) == 1:
        return list(coeffs)
    num = [Fraction(x) for x in coeffs]
    den = [Fraction(x) for x in g]
    q = []
    while len(num) >= len(den):
        c = num[0] / den[0]
        q.append(c)
        for i in range(len(den)):
            num[i] -= c * den[i]
        num.pop(0)
    assert not any(num), "square-free division must be exact"
    d = 1
    for x in q:
        d = d * x.denominator // igcd(d, x.denominator)
    ints = [int(x * d) for x in q]
    content = 0
    for x in ints:
        content = igcd(content, abs(x))
    content = max(content, 1)
    out = [x // content for x in ints]
    return [-x for x in out] if out[0] < 0 else out


def frac_solve(A, rhs_cols):
    """Solve A X = B exactly over Fractions; B given as list of columns."""
    d = len(A)
    m = len(rhs_cols)
    M = [[Fraction(A[i][j]) for j in range(d)] +
         [Fraction(rhs_cols[c][i]) for c in range(m)] for i in range(d)]
    for col in range(d):
        piv = next((r for r in range(col, d) if M[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [x / pv for x in M[col]]
        for r in range(d):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [[M[i][d + c] for i in range(d)] for c in range(m)]


def frac_inv(A):
    d = len(A)
    cols = frac_solve(A, [[1 if i == j else 0 for i in range(d)] for j in range(d)])
    return transpose(cols)
