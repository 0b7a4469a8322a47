"""Rank-1 constraint systems and a builder with witness hints.

A linear combination is a dict {wire_index: coefficient}; wire 0 is the
constant 1. A constraint is a triple (A, B, C) of linear combinations
enforcing <A,w> * <B,w> = <C,w>.

Wires are laid out as: 0 = constant one, 1..num_public = public inputs,
then private wires. Witness hints (closures computing a wire's value
from earlier wires) are recorded in registration order so a full
assignment can be derived from the input wires alone.
"""

import hashlib
import struct

from .errors import BufferError_, UnsatisfiedWitness
from .field import P

MAGIC = b"ZKTXCS1"

ONE = 0


def lc_const(c: int) -> dict:
    c %= P
    return {ONE: c} if c else {}


def lc_of(wire: int) -> dict:
    return {wire: 1}


def lc_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        nv = (out.get(k, 0) + v) % P
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return out


def lc_sub(a: dict, b: dict) -> dict:
    return lc_add(a, lc_scale(b, P - 1))


def lc_scale(a: dict, c: int) -> dict:
    c %= P
    if c == 0:
        return {}
    return {k: v * c % P for k, v in a.items()}


def lc_is_const(a: dict) -> bool:
    return all(k == ONE for k in a)


def lc_const_value(a: dict) -> int:
    return a.get(ONE, 0)


def lc_eval(a: dict, w: list) -> int:
    return sum(w[k] * v for k, v in a.items()) % P


class ConstraintSystem:
    """Immutable once built; shared by prover and verifier."""

    def __init__(self, num_vars: int, num_public: int, constraints: list):
        self.num_vars = num_vars
        self.num_public = num_public
        self.constraints = constraints

    def first_failing(self, values) -> int:
        """Index of the first unsatisfied constraint, or -1."""
        for i, (a, b, c) in enumerate(self.constraints):
            if lc_eval(a, values) * lc_eval(b, values) % P != lc_eval(c, values):
                return i
        return -1

    def is_satisfied(self, values) -> bool:
        return self.first_failing(values) == -1

    def check(self, values):
        idx = self.first_failing(values)
        if idx != -1:
            raise UnsatisfiedWitness(idx)

    def serialize(self) -> bytes:
        out = [MAGIC]
        out.append(struct.pack("<III", self.num_vars, self.num_public,
                               len(self.constraints)))
        for triple in self.constraints:
            for lc in triple:
                items = sorted(lc.items())
                out.append(struct.pack("<I", len(items)))
                for idx, coeff in items:
                    out.append(struct.pack("<I", idx))
                    out.append(coeff.to_bytes(32, "little"))
        return b"".join(out)

    @classmethod
    def deserialize(cls, blob: bytes) -> "ConstraintSystem":
        if blob[:len(MAGIC)] != MAGIC:
            raise BufferError_("bad constraint-system magic")
        off = len(MAGIC)
        num_vars, num_public, n_cons = struct.unpack_from("<III", blob, off)
        off += 12
        constraints = []
        for _ in range(n_cons):
            triple = []
            for _ in range(3):
                (nterms,) = struct.unpack_from("<I", blob, off)
                off += 4
                lc = {}
                for _ in range(nterms):
                    (idx,) = struct.unpack_from("<I", blob, off)
                    off += 4
                    coeff = int.from_bytes(blob[off:off + 32], "little")
                    off += 32
                    if idx >= num_vars:
                        raise BufferError_("wire index out of range")
                    lc[idx] = coeff % P
                triple.append(lc)
            constraints.append(tuple(triple))
        if off != len(blob):
            raise BufferError_("trailing bytes in constraint system")
        return cls(num_vars, num_public, constraints)

    def digest(self) -> str:
        return hashlib.sha256(self.serialize()).hexdigest()


class CircuitBuilder:
    def __init__(self):
        self.num_vars = 1  # wire 0 is the constant 1
        self.num_public = 0
        self.constraints = []
        self.eval_order = []  # (wire, hint) in evaluation order
        self._public_closed = False

    def alloc_public(self) -> int:
        if self._public_closed:
            raise AssertionError("public wires must be allocated first")
        wire = self.num_vars
        self.num_vars += 1
        self.num_public += 1
        return wire

    def alloc_private(self) -> int:
        self._public_closed = True
        wire = self.num_vars
        self.num_vars += 1
        return wire

    def alloc_hinted(self, hint) -> int:
        """Private wire whose value is computed by ``hint(values)``."""
        wire = self.alloc_private()
        self.eval_order.append((wire, hint))
        return wire

    def set_hint(self, wire: int, hint):
        self.eval_order.append((wire, hint))

    def enforce(self, a: dict, b: dict, c: dict):
        self.constraints.append((a, b, c))

    def enforce_zero(self, a: dict):
        self.enforce(a, lc_const(1), {})

    def enforce_equal(self, a: dict, b: dict):
        self.enforce_zero(lc_sub(a, b))

    def enforce_boolean(self, lc: dict):
        self.enforce(lc, lc_sub(lc, lc_const(1)), {})

    # --- arithmetic on linear combinations -------------------------------

    def mul(self, a: dict, b: dict) -> dict:
        """Product as an LC; allocates a wire unless one side is constant."""
        if lc_is_const(a):
            return lc_scale(b, lc_const_value(a))
        if lc_is_const(b):
            return lc_scale(a, lc_const_value(b))
        wire = self.alloc_hinted(
            lambda w, a=a, b=b: lc_eval(a, w) * lc_eval(b, w) % P)
        self.enforce(a, b, lc_of(wire))
        return lc_of(wire)

    def materialize(self, lc: dict) -> dict:
        """Pin a wide LC to a single wire so later uses stay small."""
        if len(lc) <= 1:
            return lc
        wire = self.alloc_hinted(lambda w, lc=lc: lc_eval(lc, w))
        self.enforce_equal(lc, lc_of(wire))
        return lc_of(wire)

    def div(self, num: dict, den: dict) -> dict:
        """Quotient LC with constraint q * den = num."""
        if lc_is_const(den):
            return lc_scale(num, pow(lc_const_value(den), P - 2, P))
        if lc_is_const(num) and lc_const_value(num) == 0:
            pass  # 0/x is still witnessed as a wire to keep the constraint
        wire = self.alloc_hinted(
            lambda w, num=num, den=den:
            lc_eval(num, w) * pow(lc_eval(den, w), P - 2, P) % P)
        self.enforce(lc_of(wire), den, num)
        return lc_of(wire)

    def build(self) -> ConstraintSystem:
        return ConstraintSystem(self.num_vars, self.num_public,
                                list(self.constraints))

    def derive_witness(self, inputs: dict) -> list:
        """Full assignment from {wire: value} for the input wires."""
        values = [0] * self.num_vars
        values[ONE] = 1
        for wire, val in inputs.items():
            values[wire] = val % P
        for wire, hint in self.eval_order:
            values[wire] = hint(values)
        return values
