"""Arithmetic in the scalar field of BN254.

This prime field is both the field the constraint system is defined over
and the base field of the Baby Jubjub curve. Elements are plain Python
ints in [0, P); the helpers here cover the few operations that are not a
one-liner.
"""

# Order of the BN254 (alt_bn128) G1/G2 groups == the circuit field.
P = 21888242871839275222246405745257275088548364400416034343698204186575808495617


def fe(value: int) -> int:
    """Canonical representative of ``value`` mod P."""
    return value % P


def inv(a: int) -> int:
    if a % P == 0:
        raise ZeroDivisionError("inverse of zero in F_p")
    return pow(a, P - 2, P)


def batch_inv(values: list) -> list:
    """Montgomery batch inversion; one modexp for the whole list."""
    prefix = []
    acc = 1
    for v in values:
        prefix.append(acc)
        acc = acc * v % P
    acc_inv = inv(acc)
    out = [0] * len(values)
    for i in range(len(values) - 1, -1, -1):
        out[i] = prefix[i] * acc_inv % P
        acc_inv = acc_inv * values[i] % P
    return out


def root_of_unity(order: int) -> int:
    """Element of multiplicative order exactly ``order`` (a power of two)."""
    assert order & (order - 1) == 0 and order > 0
    assert (P - 1) % order == 0
    for g in range(5, 100):
        w = pow(g, (P - 1) // order, P)
        # w has order dividing `order`; exact order iff w^(order/2) != 1
        if order == 1 or pow(w, order // 2, P) != 1:
            return w
    raise AssertionError("no root of unity found")
