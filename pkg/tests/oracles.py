"""Independent brute-force oracles.

These deliberately avoid the library's algorithms: the hull oracle scans
integer direction vectors instead of gift wrapping, the weight-membership
oracle evaluates the defining inequality systems term by term, and the
product-formula oracle composes the approximant literally.
"""

import cmath
from fractions import Fraction

import numpy as np

# Exponents in the random-support tests are <= 20, so every edge normal and
# every mediant separating two adjacent edges has entries <= 41.
DIRECTION_LIMIT = 42


def hull_vertices_oracle(support):
    """Vertices of the quadrant-union hull by direction scanning.

    A support point is a vertex iff some direction (u, v) with u, v >= 1
    makes it the strict minimizer of u*x + v*y over the support.
    """
    pts = sorted(set(support))
    xs = np.array([p[0] for p in pts], dtype=np.int64)
    ys = np.array([p[1] for p in pts], dtype=np.int64)
    u = np.arange(1, DIRECTION_LIMIT)
    grid_u, grid_v = np.meshgrid(u, u, indexing="ij")
    dots = (grid_u.reshape(-1, 1) * xs.reshape(1, -1)
            + grid_v.reshape(-1, 1) * ys.reshape(1, -1))
    mins = dots.min(axis=1, keepdims=True)
    is_min = dots == mins
    strict = is_min.sum(axis=1) == 1
    winners = sorted({int(np.argmax(is_min[row])) for row in
                      np.flatnonzero(strict)})
    return tuple(pts[i] for i in winners)


def intercepts_oracle(vertices):
    """Exact y-intercepts of the edges through consecutive vertices."""
    out = []
    for (x0, y0), (x1, y1) in zip(vertices, vertices[1:]):
        out.append(Fraction(y0, 1)
                   - Fraction(y1 - y0, x1 - x0) * Fraction(x0, 1))
    return tuple(out)


def z_weight_admissible(support, delta, gamma, d, weight):
    """Direct evaluation of the z-weight inequality system.

    weight * delta <= gamma + weight * d <= i + weight * j for every
    support point, with weight > 0 except that the Case-1/identity weight 0
    is admitted when the middle inequality chain is vacuous there.
    """
    mid = Fraction(gamma) + weight * d
    if not weight * delta <= mid:
        return False
    return all(mid <= Fraction(i) + weight * j for i, j in support)


def w_weight_admissible(support, delta, gamma, d, weight):
    """Direct evaluation of the Case-3 w-weight inequality system."""
    if not weight > 0:
        return False
    mid = Fraction(gamma) + weight * d
    if not mid <= weight * delta:
        return False
    return all(mid <= Fraction(i) + weight * j for i, j in support)


def case4_first_weight_admissible(vertices, k, delta, gamma, d, weight):
    """Direct evaluation of the Case-4 first-stage system on the vertices.

    Weak inequalities against vertices before the dominant one, strict
    after it, plus the delta inequality and positivity.
    """
    if not weight > 0:
        return False
    mid = Fraction(gamma) + weight * d
    if not weight * delta <= mid:
        return False
    for idx, (nj, mj) in enumerate(vertices, start=1):
        val = Fraction(nj) + weight * mj
        if idx <= k - 1 and not mid <= val:
            return False
        if idx >= k + 1 and not mid < val:
            return False
    return True


def case4_second_weight_admissible(support, delta, gamma, d, l1_choice,
                                   weight):
    """Direct evaluation of the Case-4 second-stage system."""
    if not weight > 0:
        return False
    gt = Fraction(gamma) + l1_choice * d - l1_choice * delta
    mid = gt + weight * d
    if not mid <= weight * delta:
        return False
    for i, j in support:
        it = Fraction(i) + l1_choice * j - l1_choice * delta
        if not mid <= it + weight * j:
            return False
    return True


def product_formula_approximant(f, gamma, d, coeff, n, z, w):
    """The n-th approximant assembled literally from the product formula,
    with every root principal."""
    delta = f.p.delta
    a = f.p.leading
    prod1 = prod2 = complex(1)
    zn, wn = z, w
    gam = 0
    for j in range(1, n + 1):
        denom = coeff * zn ** gamma * wn ** d
        if zn == 0 or wn == 0 or abs(denom) < 1e-250:
            # Orbit contracted past the floating range; the remaining
            # factors are 1 to machine precision.
            break
        one_zeta = f.p(zn) / (a * zn ** delta)
        one_eta = f.q(zn, wn) / denom
        gam = delta * gam + gamma * d ** (j - 1)
        prod1 *= cmath.exp(cmath.log(one_zeta) / delta ** j)
        prod2 *= cmath.exp(cmath.log(one_eta) / d ** j
                           - float(Fraction(gam, (delta * d) ** j))
                           * cmath.log(one_zeta))
        zn, wn = f(zn, wn)
    return (z * prod1, w * prod2)
