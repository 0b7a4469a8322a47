"""BN254 (alt_bn128) pairing curve: groups, MSM, and the ate pairing.

G1 is y^2 = x^3 + 3 over Fp; G2 lives on the sextic twist over Fp2 with
Fp2 = Fp[u]/(u^2+1). The pairing works in Fp12 represented as
Fp[w]/(w^12 - 18 w^6 + 82) (so w^6 = 9 + u), with twist points lifted to
Fp12 and a Miller loop over the ate loop count, followed by the full
final exponentiation.

Affine points are (x, y) tuples (None = infinity); internal arithmetic
uses Jacobian coordinates ((X, Y, Z), Z=0 for infinity). Fp2 elements
are (a, b) tuples meaning a + b*u.
"""

from .field import P as R  # group order == circuit scalar field

# Base-field prime.
Q = 21888242871839275222246405745257275088696311157297823662689037894645226208583

B1 = 3
# 3 / (9 + u), the twist curve constant.
B2 = (19485874751759354771024239261021720505790618469301721065564631296452457478373,
      266929791119991161246907387137283842545076965332900288569378510910307636690)

G1_GEN = (1, 2)
G2_GEN = (
    (10857046999023057135944570762232829481370756359578518086990519993285655852781,
     11559732032986387107991004021392285783925812861821192530917403151452391805634),
    (8495653923123431417604973247489272438418190587263600148770280649306958101930,
     4082367875863433681332203403145435568316851327593401208105741076214120093531),
)

ATE_LOOP_COUNT = 29793968203157093288

# ---------------------------------------------------------------- Fp2 ----


def f2_add(a, b):
    return ((a[0] + b[0]) % Q, (a[1] + b[1]) % Q)


def f2_sub(a, b):
    return ((a[0] - b[0]) % Q, (a[1] - b[1]) % Q)


def f2_neg(a):
    return ((-a[0]) % Q, (-a[1]) % Q)


def f2_mul(a, b):
    a0, a1 = a
    b0, b1 = b
    t0 = a0 * b0
    t1 = a1 * b1
    t2 = (a0 + a1) * (b0 + b1)
    return ((t0 - t1) % Q, (t2 - t0 - t1) % Q)


def f2_sqr(a):
    a0, a1 = a
    return ((a0 + a1) * (a0 - a1) % Q, 2 * a0 * a1 % Q)


def f2_scale(a, k):
    return (a[0] * k % Q, a[1] * k % Q)


def f2_inv(a):
    a0, a1 = a
    norm = (a0 * a0 + a1 * a1) % Q
    ni = pow(norm, Q - 2, Q)
    return (a0 * ni % Q, (-a1 * ni) % Q)


F2_ZERO = (0, 0)
F2_ONE = (1, 0)

# ------------------------------------------------------------- G1 ops ----

G1_INF = (0, 1, 0)


def g1_to_jac(pt):
    if pt is None:
        return G1_INF
    return (pt[0], pt[1], 1)


def g1_to_affine(jac):
    x, y, z = jac
    if z == 0:
        return None
    zi = pow(z, Q - 2, Q)
    zi2 = zi * zi % Q
    return (x * zi2 % Q, y * zi2 % Q * zi % Q)


def g1_jac_double(p):
    if p[2] == 0:
        return G1_INF
    return _g1_double_nonzero(p)


def _g1_double_nonzero(p):
    x, y, z = p
    a = x * x % Q
    b = y * y % Q
    c = b * b % Q
    t = (x + b)
    d = 2 * (t * t - a - c) % Q
    e = 3 * a % Q
    f = e * e % Q
    x3 = (f - 2 * d) % Q
    y3 = (e * (d - x3) - 8 * c) % Q
    z3 = 2 * y * z % Q
    return (x3, y3, z3)


def g1_jac_add(p1, p2):
    if p1[2] == 0:
        return p2
    if p2[2] == 0:
        return p1
    x1, y1, z1 = p1
    x2, y2, z2 = p2
    z1z1 = z1 * z1 % Q
    z2z2 = z2 * z2 % Q
    u1 = x1 * z2z2 % Q
    u2 = x2 * z1z1 % Q
    s1 = y1 * z2 % Q * z2z2 % Q
    s2 = y2 * z1 % Q * z1z1 % Q
    h = (u2 - u1) % Q
    if h == 0:
        if (s2 - s1) % Q == 0:
            return _g1_double_nonzero(p1)
        return G1_INF
    i = 4 * h * h % Q
    j = h * i % Q
    rr = 2 * (s2 - s1) % Q
    v = u1 * i % Q
    x3 = (rr * rr - j - 2 * v) % Q
    y3 = (rr * (v - x3) - 2 * s1 * j) % Q
    t = (z1 + z2)
    z3 = (t * t - z1z1 - z2z2) % Q * h % Q
    return (x3, y3, z3)


def g1_jac_add_affine(p1, pt2):
    """Mixed addition, p2 affine (never infinity)."""
    if p1[2] == 0:
        return (pt2[0], pt2[1], 1)
    x1, y1, z1 = p1
    x2, y2 = pt2
    z1z1 = z1 * z1 % Q
    u2 = x2 * z1z1 % Q
    s2 = y2 * z1 % Q * z1z1 % Q
    h = (u2 - x1) % Q
    if h == 0:
        if (s2 - y1) % Q == 0:
            return _g1_double_nonzero(p1)
        return G1_INF
    hh = h * h % Q
    i = 4 * hh % Q
    j = h * i % Q
    rr = 2 * (s2 - y1) % Q
    v = x1 * i % Q
    x3 = (rr * rr - j - 2 * v) % Q
    y3 = (rr * (v - x3) - 2 * y1 * j) % Q
    t = (z1 + h)
    z3 = (t * t - z1z1 - hh) % Q
    return (x3, y3, z3)


def g1_neg(pt):
    if pt is None:
        return None
    return (pt[0], (-pt[1]) % Q)


def g1_mul(pt, k):
    k %= R
    acc = G1_INF
    add = g1_to_jac(pt)
    while k:
        if k & 1:
            acc = g1_jac_add(acc, add)
        add = g1_jac_double(add)
        k >>= 1
    return g1_to_affine(acc)


def g1_on_curve(pt):
    if pt is None:
        return True
    x, y = pt
    if not (0 <= x < Q and 0 <= y < Q):
        return False
    return (y * y - x * x * x - B1) % Q == 0

# ------------------------------------------------------------- G2 ops ----

G2_INF = (F2_ZERO, F2_ONE, F2_ZERO)


def g2_to_jac(pt):
    if pt is None:
        return G2_INF
    return (pt[0], pt[1], F2_ONE)


def g2_to_affine(jac):
    x, y, z = jac
    if z == F2_ZERO:
        return None
    zi = f2_inv(z)
    zi2 = f2_sqr(zi)
    return (f2_mul(x, zi2), f2_mul(f2_mul(y, zi2), zi))


def _g2_double_nonzero(p):
    x, y, z = p
    a = f2_sqr(x)
    b = f2_sqr(y)
    c = f2_sqr(b)
    t = f2_add(x, b)
    d = f2_scale(f2_sub(f2_sub(f2_sqr(t), a), c), 2)
    e = f2_scale(a, 3)
    f = f2_sqr(e)
    x3 = f2_sub(f, f2_scale(d, 2))
    y3 = f2_sub(f2_mul(e, f2_sub(d, x3)), f2_scale(c, 8))
    z3 = f2_scale(f2_mul(y, z), 2)
    return (x3, y3, z3)


def g2_jac_double(p):
    if p[2] == F2_ZERO:
        return G2_INF
    return _g2_double_nonzero(p)


def g2_jac_add(p1, p2):
    if p1[2] == F2_ZERO:
        return p2
    if p2[2] == F2_ZERO:
        return p1
    x1, y1, z1 = p1
    x2, y2, z2 = p2
    z1z1 = f2_sqr(z1)
    z2z2 = f2_sqr(z2)
    u1 = f2_mul(x1, z2z2)
    u2 = f2_mul(x2, z1z1)
    s1 = f2_mul(f2_mul(y1, z2), z2z2)
    s2 = f2_mul(f2_mul(y2, z1), z1z1)
    h = f2_sub(u2, u1)
    if h == F2_ZERO:
        if f2_sub(s2, s1) == F2_ZERO:
            return _g2_double_nonzero(p1)
        return G2_INF
    i = f2_scale(f2_sqr(h), 4)
    j = f2_mul(h, i)
    rr = f2_scale(f2_sub(s2, s1), 2)
    v = f2_mul(u1, i)
    x3 = f2_sub(f2_sub(f2_sqr(rr), j), f2_scale(v, 2))
    y3 = f2_sub(f2_mul(rr, f2_sub(v, x3)), f2_scale(f2_mul(s1, j), 2))
    z3 = f2_mul(f2_sub(f2_sub(f2_sqr(f2_add(z1, z2)), z1z1), z2z2), h)
    return (x3, y3, z3)


def g2_jac_add_affine(p1, pt2):
    if p1[2] == F2_ZERO:
        return (pt2[0], pt2[1], F2_ONE)
    x1, y1, z1 = p1
    x2, y2 = pt2
    z1z1 = f2_sqr(z1)
    u2 = f2_mul(x2, z1z1)
    s2 = f2_mul(f2_mul(y2, z1), z1z1)
    h = f2_sub(u2, x1)
    if h == F2_ZERO:
        if f2_sub(s2, y1) == F2_ZERO:
            return _g2_double_nonzero(p1)
        return G2_INF
    hh = f2_sqr(h)
    i = f2_scale(hh, 4)
    j = f2_mul(h, i)
    rr = f2_scale(f2_sub(s2, y1), 2)
    v = f2_mul(x1, i)
    x3 = f2_sub(f2_sub(f2_sqr(rr), j), f2_scale(v, 2))
    y3 = f2_sub(f2_mul(rr, f2_sub(v, x3)), f2_scale(f2_mul(y1, j), 2))
    z3 = f2_sub(f2_sub(f2_sqr(f2_add(z1, h)), z1z1), hh)
    return (x3, y3, z3)


def g2_neg(pt):
    if pt is None:
        return None
    return (pt[0], f2_neg(pt[1]))


def g2_mul(pt, k):
    k %= R
    acc = G2_INF
    add = g2_to_jac(pt)
    while k:
        if k & 1:
            acc = g2_jac_add(acc, add)
        add = g2_jac_double(add)
        k >>= 1
    return g2_to_affine(acc)


def g2_on_curve(pt):
    if pt is None:
        return True
    x, y = pt
    lhs = f2_sqr(y)
    rhs = f2_add(f2_mul(f2_sqr(x), x), B2)
    return lhs == rhs


def g2_in_subgroup(pt):
    return g2_on_curve(pt) and g2_mul(pt, R) is None

# --------------------------------------------------- multi-scalar mul ----


def _msm(points, scalars, add_affine, add_jac, double_jac, inf, to_affine):
    pairs = [(p, s % R) for p, s in zip(points, scalars)
             if p is not None and s % R != 0]
    if not pairs:
        return None
    n = len(pairs)
    c = 3
    while (1 << (c + 1)) + 254 // (c + 1) * (n + (1 << (c + 1))) < \
          (1 << c) + 254 // c * (n + (1 << c)) and c < 16:
        c += 1
    windows = []
    for shift in range(0, 254, c):
        buckets = [inf] * (1 << c)
        nonzero = False
        for p, s in pairs:
            idx = (s >> shift) & ((1 << c) - 1)
            if idx:
                buckets[idx] = add_affine(buckets[idx], p)
                nonzero = True
        if not nonzero:
            windows.append(inf)
            continue
        running = inf
        acc = inf
        for k in range((1 << c) - 1, 0, -1):
            running = add_jac(running, buckets[k])
            acc = add_jac(acc, running)
        windows.append(acc)
    total = inf
    for win in reversed(windows):
        for _ in range(c):
            total = double_jac(total)
        total = add_jac(total, win)
    return to_affine(total)


def g1_msm(points, scalars):
    return _msm(points, scalars, g1_jac_add_affine, g1_jac_add,
                g1_jac_double, G1_INF, g1_to_affine)


def g2_msm(points, scalars):
    return _msm(points, scalars, g2_jac_add_affine, g2_jac_add,
                g2_jac_double, G2_INF, g2_to_affine)

# ----------------------------------------------------- fixed-base mul ----


class FixedBaseTable:
    """Windowed table for repeated scalar multiplication of one base."""

    def __init__(self, base, group="g1", window=8):
        self.window = window
        self.group = group
        if group == "g1":
            add_affine, double, inf = g1_jac_add_affine, g1_jac_double, G1_INF
            add_jac = g1_jac_add
            normalize = _g1_batch_normalize
        else:
            add_affine, double, inf = g2_jac_add_affine, g2_jac_double, G2_INF
            add_jac = g2_jac_add
            normalize = _g2_batch_normalize
        self._add_jac = add_jac
        self._inf = inf
        self._to_affine = g1_to_affine if group == "g1" else g2_to_affine
        n_windows = (254 + window - 1) // window
        rows = []
        cur = (base[0], base[1], 1 if group == "g1" else F2_ONE)
        for _ in range(n_windows):
            # row[k] = k * (base << (window * i))
            row = [None, cur]
            for _k in range(2, 1 << window):
                row.append(add_jac(row[-1], cur))
            rows.append(row)
            cur = add_jac(row[-1], cur)  # base << (window * (i + 1))
        # normalize all rows to affine for cheap mixed adds
        flat = [pt for row in rows for pt in row[1:]]
        flat_affine = normalize(flat)
        self.rows = []
        idx = 0
        for row in rows:
            arow = [None]
            for _ in row[1:]:
                arow.append(flat_affine[idx])
                idx += 1
            self.rows.append(arow)
        self._add_affine = add_affine

    def mul(self, scalar):
        scalar %= R
        acc = self._inf
        w = self.window
        for i, row in enumerate(self.rows):
            idx = (scalar >> (w * i)) & ((1 << w) - 1)
            if idx:
                pt = row[idx]
                acc = self._add_affine(acc, pt)
        return self._to_affine(acc)

    def mul_jac(self, scalar):
        scalar %= R
        acc = self._inf
        w = self.window
        for i, row in enumerate(self.rows):
            idx = (scalar >> (w * i)) & ((1 << w) - 1)
            if idx:
                acc = self._add_affine(acc, row[idx])
        return acc

    def mul_many(self, scalars):
        jacs = [self.mul_jac(s) for s in scalars]
        if self.group == "g1":
            return _g1_batch_normalize(jacs)
        return _g2_batch_normalize(jacs)


def _g1_batch_normalize(jacs):
    zs = [p[2] for p in jacs if p[2] != 0]
    inv_map = _batch_inv_modq(zs)
    out = []
    it = iter(inv_map)
    for p in jacs:
        if p[2] == 0:
            out.append(None)
            continue
        zi = next(it)
        zi2 = zi * zi % Q
        out.append((p[0] * zi2 % Q, p[1] * zi2 % Q * zi % Q))
    return out


def _batch_inv_modq(values):
    prefix = []
    acc = 1
    for v in values:
        prefix.append(acc)
        acc = acc * v % Q
    acc_inv = pow(acc, Q - 2, Q)
    out = [0] * len(values)
    for i in range(len(values) - 1, -1, -1):
        out[i] = prefix[i] * acc_inv % Q
        acc_inv = acc_inv * values[i] % Q
    return out


def _g2_batch_normalize(jacs):
    # Fp2 inverses are cheap relative to G2 work; do them directly.
    out = []
    for p in jacs:
        if p[2] == F2_ZERO:
            out.append(None)
        else:
            out.append(g2_to_affine(p))
    return out

# ------------------------------------------------------------- Fp12 -----

# w^12 = 18 w^6 - 82
_F12_W6_COEF = (82, 18)


def f12_zero():
    return [0] * 12


def f12_one():
    out = [0] * 12
    out[0] = 1
    return out


def f12_add(a, b):
    return [(x + y) % Q for x, y in zip(a, b)]


def f12_sub(a, b):
    return [(x - y) % Q for x, y in zip(a, b)]


def f12_mul(a, b):
    tmp = [0] * 23
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    tmp[i + j] += ai * bj
    for k in range(22, 11, -1):
        t = tmp[k]
        if t:
            tmp[k - 6] += t * 18
            tmp[k - 12] -= t * 82
    return [t % Q for t in tmp[:12]]


def f12_scalar(a, k):
    return [x * k % Q for x in a]


def f12_neg(a):
    return [(-x) % Q for x in a]


def f12_inv(a):
    # extended Euclid over Fp[x] against the defining polynomial
    mod = [-82, 0, 0, 0, 0, 0, 18, 0, 0, 0, 0, 0, -1]
    mod = [m % Q for m in mod]

    def deg(p):
        for d in range(len(p) - 1, -1, -1):
            if p[d]:
                return d
        return -1

    def poly_divmod(num, den):
        num = list(num)
        dd = deg(den)
        lead_inv = pow(den[dd], Q - 2, Q)
        quo = [0] * (len(num))
        for i in range(deg(num) - dd, -1, -1):
            c = num[i + dd] * lead_inv % Q
            quo[i] = c
            if c:
                for j in range(dd + 1):
                    num[i + j] = (num[i + j] - c * den[j]) % Q
        return quo, num

    # invert via extended gcd: find s with a*s = 1 mod (defining poly)
    r0, r1 = mod, list(a) + [0]
    s0, s1 = [0], [1]
    while deg(r1) > 0:
        quo, rem = poly_divmod(r0, r1)
        r0, r1 = r1, rem
        # s_new = s0 - quo * s1
        prod = [0] * (len(quo) + len(s1))
        for i, qc in enumerate(quo):
            if qc:
                for j, sc in enumerate(s1):
                    prod[i + j] = (prod[i + j] + qc * sc) % Q
        s_new = [((s0[i] if i < len(s0) else 0) - prod[i]) % Q
                 for i in range(max(len(s0), len(prod)))]
        s0, s1 = s1, s_new
    if deg(r1) < 0:
        raise ZeroDivisionError("Fp12 inverse of zero")
    c_inv = pow(r1[0], Q - 2, Q)
    out = [(s1[i] if i < len(s1) else 0) * c_inv % Q for i in range(12)]
    return out


def f12_pow(a, e):
    result = f12_one()
    base = a
    while e:
        if e & 1:
            result = f12_mul(result, base)
        base = f12_mul(base, base)
        e >>= 1
    return result

# ------------------------------------------------------------ pairing ---

_W2 = None
_W3 = None


def _w_powers():
    global _W2, _W3
    if _W2 is None:
        w = [0] * 12
        w[1] = 1
        _W2 = f12_mul(w, w)
        _W3 = f12_mul(_W2, w)
    return _W2, _W3


def twist_to_f12(pt):
    """Lift an affine G2 point (over Fp2) to the curve over Fp12."""
    if pt is None:
        return None
    w2, w3 = _w_powers()
    (x0, x1), (y0, y1) = pt
    # map u -> w^6 - 9
    nx = [0] * 12
    nx[0] = (x0 - 9 * x1) % Q
    nx[6] = x1
    ny = [0] * 12
    ny[0] = (y0 - 9 * y1) % Q
    ny[6] = y1
    return (f12_mul(nx, w2), f12_mul(ny, w3))


def g1_to_f12(pt):
    if pt is None:
        return None
    x = [0] * 12
    x[0] = pt[0]
    y = [0] * 12
    y[0] = pt[1]
    return (x, y)


def _f12_pt_double(pt):
    x, y = pt
    slope = f12_mul(f12_scalar(f12_mul(x, x), 3),
                    f12_inv(f12_scalar(y, 2)))
    x3 = f12_sub(f12_mul(slope, slope), f12_scalar(x, 2))
    y3 = f12_sub(f12_mul(slope, f12_sub(x, x3)), y)
    return (x3, y3)


def _f12_pt_add(p1, p2):
    if p1 is None:
        return p2
    if p2 is None:
        return p1
    x1, y1 = p1
    x2, y2 = p2
    if x1 == x2:
        if y1 == y2:
            return _f12_pt_double(p1)
        return None
    slope = f12_mul(f12_sub(y2, y1), f12_inv(f12_sub(x2, x1)))
    x3 = f12_sub(f12_sub(f12_mul(slope, slope), x1), x2)
    y3 = f12_sub(f12_mul(slope, f12_sub(x1, x3)), y1)
    return (x3, y3)


def _linefunc(p1, p2, t):
    """Evaluate the line through p1, p2 at t (all over Fp12)."""
    x1, y1 = p1
    x2, y2 = p2
    xt, yt = t
    if x1 != x2:
        slope = f12_mul(f12_sub(y2, y1), f12_inv(f12_sub(x2, x1)))
        return f12_sub(f12_mul(slope, f12_sub(xt, x1)), f12_sub(yt, y1))
    if y1 == y2:
        slope = f12_mul(f12_scalar(f12_mul(x1, x1), 3),
                        f12_inv(f12_scalar(y1, 2)))
        return f12_sub(f12_mul(slope, f12_sub(xt, x1)), f12_sub(yt, y1))
    return f12_sub(xt, x1)


def _miller_loop(q_pt, p_pt):
    """Miller loop value (before final exponentiation)."""
    if q_pt is None or p_pt is None:
        return f12_one()
    r_pt = q_pt
    f = f12_one()
    for i in range(ATE_LOOP_COUNT.bit_length() - 2, -1, -1):
        f = f12_mul(f12_mul(f, f), _linefunc(r_pt, r_pt, p_pt))
        r_pt = _f12_pt_double(r_pt)
        if ATE_LOOP_COUNT & (1 << i):
            f = f12_mul(f, _linefunc(r_pt, q_pt, p_pt))
            r_pt = _f12_pt_add(r_pt, q_pt)
    q1 = (f12_pow(q_pt[0], Q), f12_pow(q_pt[1], Q))
    nq2 = (f12_pow(q1[0], Q), f12_neg(f12_pow(q1[1], Q)))
    f = f12_mul(f, _linefunc(r_pt, q1, p_pt))
    r_pt = _f12_pt_add(r_pt, q1)
    f = f12_mul(f, _linefunc(r_pt, nq2, p_pt))
    return f

_FINAL_EXP = (Q ** 12 - 1) // R


def final_exponentiate(f):
    return f12_pow(f, _FINAL_EXP)


def pairing(p_g1, q_g2):
    """e(P, Q) in the multiplicative target group (an Fp12 element)."""
    f = _miller_loop(twist_to_f12(q_g2), g1_to_f12(p_g1))
    return final_exponentiate(f)


def multi_pairing_is_one(pairs) -> bool:
    """Whether the product of e(P_i, Q_i) equals 1; one final exp."""
    f = f12_one()
    for p_g1, q_g2 in pairs:
        if p_g1 is None or q_g2 is None:
            continue
        f = f12_mul(f, _miller_loop(twist_to_f12(q_g2), g1_to_f12(p_g1)))
    return final_exponentiate(f) == f12_one()
