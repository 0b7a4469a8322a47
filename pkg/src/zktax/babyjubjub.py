"""Baby Jubjub: twisted Edwards curve over the BN254 scalar field.

a*x^2 + y^2 = 1 + d*x^2*y^2 with a = 168700, d = 168696. The curve has
cofactor 8; signatures live in the prime-order subgroup generated by
BASE (the standard generator times 8).

The Edwards addition law is complete here (a square, d non-square), so
one formula covers doubling and the identity.
"""

from .field import P, inv

A = 168700
D = 168696

# Order of the full group is 8 * SUBGROUP_ORDER.
SUBGROUP_ORDER = 2736030358979909402780800718157159386076813972158567259200215660948447373041
COFACTOR = 8

IDENTITY = (0, 1)

# Generator of the prime-order subgroup (8 * the full-group generator).
BASE = (
    5299619240641551281634865583518297030282874472190772894086521144482721001553,
    16950150798460657717958625567821834550301663161624707787222815936182638968203,
)


def is_on_curve(pt) -> bool:
    x, y = pt
    if not (0 <= x < P and 0 <= y < P):
        return False
    x2 = x * x % P
    y2 = y * y % P
    return (A * x2 + y2) % P == (1 + D * x2 % P * y2) % P


def point_add(p1, p2):
    x1, y1 = p1
    x2, y2 = p2
    beta = x1 * y2 % P
    gamma = y1 * x2 % P
    delta = y1 * y2 % P
    eta = x1 * x2 % P
    tau = D * beta % P * gamma % P
    x3 = (beta + gamma) * inv(1 + tau) % P
    y3 = (delta - A * eta) * inv(1 - tau) % P
    return (x3, y3)


def point_neg(pt):
    x, y = pt
    return ((-x) % P, y)


def _proj_add(p1, p2):
    # add-2008-bbjlp; complete, no inversions
    X1, Y1, Z1 = p1
    X2, Y2, Z2 = p2
    a = Z1 * Z2 % P
    b = a * a % P
    c = X1 * X2 % P
    d = Y1 * Y2 % P
    e = D * c % P * d % P
    f = (b - e) % P
    g = (b + e) % P
    x3 = a * f % P * (((X1 + Y1) * (X2 + Y2) - c - d) % P) % P
    y3 = a * g % P * ((d - A * c) % P) % P
    z3 = f * g % P
    return (x3, y3, z3)


def scalar_mul(k: int, pt):
    """Double-and-add; k may be any non-negative integer."""
    result = (0, 1, 1)
    addend = (pt[0], pt[1], 1)
    while k:
        if k & 1:
            result = _proj_add(result, addend)
        addend = _proj_add(addend, addend)
        k >>= 1
    x, y, z = result
    zi = inv(z)
    return (x * zi % P, y * zi % P)


def in_subgroup(pt) -> bool:
    """On curve, and annihilated by the subgroup order."""
    if not is_on_curve(pt):
        return False
    return scalar_mul(SUBGROUP_ORDER, pt) == IDENTITY
