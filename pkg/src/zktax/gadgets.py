"""Constraint-level building blocks shared by the circuits.

Everything operates on linear combinations over a CircuitBuilder; the
builder folds multiplications by constants into linear terms, so gadget
code stays uniform while fixed-base curve operations come out cheaper
than variable-base ones.
"""

from . import babyjubjub as bjj
from .field import P
from .mimc import PACK_CHUNK, derive_round_constants
from .r1cs import (CircuitBuilder, lc_add, lc_const, lc_eval, lc_scale,
                   lc_sub)

# --- bits and bytes ------------------------------------------------------


def bit_decompose(b: CircuitBuilder, lc: dict, nbits: int) -> list:
    """Boolean wires b_i with sum b_i 2^i == lc; LSB first."""
    bits = []
    for i in range(nbits):
        wire = b.alloc_hinted(
            lambda w, lc=lc, i=i: (lc_eval(lc, w) >> i) & 1)
        bit = {wire: 1}
        b.enforce_boolean(bit)
        bits.append(bit)
    acc = {}
    for i, bit in enumerate(bits):
        acc = lc_add(acc, lc_scale(bit, 1 << i))
    b.enforce_equal(acc, lc)
    return bits


def enforce_byte_range(b: CircuitBuilder, lc: dict) -> list:
    """Constrain an input byte to [0, 127] via 7-bit decomposition."""
    return bit_decompose(b, lc, 7)


def pack_chunks(byte_lcs: list) -> list:
    """31-byte big-endian packing as pure linear combinations."""
    chunks = []
    for off in range(0, len(byte_lcs), PACK_CHUNK):
        group = byte_lcs[off:off + PACK_CHUNK]
        acc = {}
        for j in range(PACK_CHUNK):
            shift = 8 * (PACK_CHUNK - 1 - j)
            if j < len(group):
                acc = lc_add(acc, lc_scale(group[j], 1 << shift))
        chunks.append(acc)
    return chunks


# --- MiMC-7 --------------------------------------------------------------


def mimc7_gadget(b: CircuitBuilder, x_lc: dict, k_lc: dict) -> dict:
    t = x_lc
    for c in derive_round_constants():
        a = lc_add(lc_add(t, k_lc), lc_const(c))
        a2 = b.mul(a, a)
        a4 = b.mul(a2, a2)
        a6 = b.mul(a4, a2)
        t = b.mul(a6, a)
    return lc_add(t, k_lc)


def mimc_multi_gadget(b: CircuitBuilder, input_lcs: list, key_lc=None) -> dict:
    h = key_lc if key_lc is not None else {}
    for x_lc in input_lcs:
        x_lc = b.materialize(x_lc)
        block = mimc7_gadget(b, x_lc, h)
        h = b.materialize(lc_add(lc_add(block, x_lc), h))
    return h


# --- Baby Jubjub ---------------------------------------------------------


def edwards_add(b: CircuitBuilder, p1, p2):
    x1, y1 = p1
    x2, y2 = p2
    beta = b.mul(x1, y2)
    gamma = b.mul(y1, x2)
    delta = b.mul(y1, y2)
    eta = b.mul(x1, x2)
    tau = lc_scale(b.mul(beta, gamma), bjj.D)
    one = lc_const(1)
    x3 = b.div(lc_add(beta, gamma), lc_add(one, tau))
    y3 = b.div(lc_sub(delta, lc_scale(eta, bjj.A)), lc_sub(one, tau))
    return (x3, y3)


def edwards_double(b: CircuitBuilder, p):
    x1, y1 = p
    xy = b.mul(x1, y1)
    delta = b.mul(y1, y1)
    eta = b.mul(x1, x1)
    tau = lc_scale(b.mul(xy, xy), bjj.D)
    one = lc_const(1)
    x3 = b.div(lc_scale(xy, 2), lc_add(one, tau))
    y3 = b.div(lc_sub(delta, lc_scale(eta, bjj.A)), lc_sub(one, tau))
    return (x3, y3)


def point_select(b: CircuitBuilder, bit_lc, p_true, p_false):
    """p_true if bit else p_false, one product per coordinate."""
    out = []
    for t, f in zip(p_true, p_false):
        out.append(lc_add(f, b.mul(bit_lc, lc_sub(t, f))))
    return tuple(out)


def scalar_mul_gadget(b: CircuitBuilder, bits_lsb: list, point):
    """Binary double-and-add; ``point`` coords may be constants or wires."""
    acc = (lc_const(0), lc_const(1))
    for bit in reversed(bits_lsb):
        doubled = edwards_double(b, acc)
        added = edwards_add(b, doubled, point)
        acc = point_select(b, bit, added, doubled)
    return acc


def enforce_on_curve(b: CircuitBuilder, x_lc: dict, y_lc: dict):
    x2 = b.mul(x_lc, x_lc)
    y2 = b.mul(y_lc, y_lc)
    x2y2 = b.mul(x2, y2)
    lhs = lc_add(lc_scale(x2, bjj.A), y2)
    rhs = lc_add(lc_const(1), lc_scale(x2y2, bjj.D))
    b.enforce_equal(lhs, rhs)


def eddsa_verify_gadget(b: CircuitBuilder, pk, R, s_lc, digest_lc):
    """Constrain s*B == R + challenge(R, pk, digest) * pk.

    pk and R are (x, y) LC pairs; the challenge is reduced only by the
    group law (scalars act mod the subgroup order).
    """
    enforce_on_curve(b, *pk)
    enforce_on_curve(b, *R)
    c_lc = mimc_multi_gadget(b, [R[0], R[1], pk[0], pk[1], digest_lc])
    s_bits = bit_decompose(b, s_lc, 251)
    c_bits = bit_decompose(b, c_lc, 254)
    base = (lc_const(bjj.BASE[0]), lc_const(bjj.BASE[1]))
    lhs = scalar_mul_gadget(b, s_bits, base)
    c_pk = scalar_mul_gadget(b, c_bits, pk)
    rhs = edwards_add(b, R, c_pk)
    b.enforce_equal(lhs[0], rhs[0])
    b.enforce_equal(lhs[1], rhs[1])


# --- ASCII numeric parsing ----------------------------------------------

COMMA = 44
SPACE = 32
DIGIT_LO = 48


def ascii_to_uint_gadget(b: CircuitBuilder, byte_lcs: list) -> dict:
    """Parse digit-and-comma bytes into an integer LC.

    Every byte must be a digit, a comma, or a trailing pad space; any
    other byte makes the system unsatisfiable. Commas and spaces leave
    the accumulator unchanged.
    """
    if len(byte_lcs) > 20:
        raise ValueError("numeric value window limited to 20 bytes")
    v = lc_const(0)
    for byte in byte_lcs:
        is_comma_w = b.alloc_hinted(
            lambda w, byte=byte: 1 if lc_eval(byte, w) == COMMA else 0)
        is_space_w = b.alloc_hinted(
            lambda w, byte=byte: 1 if lc_eval(byte, w) == SPACE else 0)
        is_comma = {is_comma_w: 1}
        is_space = {is_space_w: 1}
        b.enforce_boolean(is_comma)
        b.enforce_boolean(is_space)
        b.enforce(is_comma, lc_sub(byte, lc_const(COMMA)), {})
        b.enforce(is_space, lc_sub(byte, lc_const(SPACE)), {})
        is_digit = lc_sub(lc_sub(lc_const(1), is_comma), is_space)
        # (b-48)(b-49)...(b-57) == 0 whenever the byte claims to be a digit
        prod = lc_sub(byte, lc_const(DIGIT_LO))
        for d in range(DIGIT_LO + 1, DIGIT_LO + 10):
            prod = b.mul(prod, lc_sub(byte, lc_const(d)))
        b.enforce(is_digit, prod, {})
        # v' = v + is_digit * (9v + byte - 48)
        step = lc_add(lc_scale(v, 9), lc_sub(byte, lc_const(DIGIT_LO)))
        v = lc_add(v, b.mul(is_digit, step))
    return v
