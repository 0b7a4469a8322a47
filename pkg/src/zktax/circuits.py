"""The redaction circuit and the range / comparison claim circuits.

All circuits embed the same statement core: the private buffer hashes to
a digest that the signer's public key has signed. The redaction circuit
additionally exposes the masked buffer as public output; the claim
circuits instead parse one or two numeric fields out of the private
buffer and constrain them against public bounds or each other.

Claim circuits address a field's value bytes by constant offsets, so
they are specific to a template *and* a value-length layout (the byte
positions of values in the canonical serialization).
"""

from dataclasses import dataclass

from . import gadgets
from .eddsa import verify_sig
from .errors import DocumentError, MaskError, SignatureMismatch, TemplateError
from .field import P
from .forms import (KIND_NUMERIC, canonicalize, value_layout)
from .mimc import hash_document
from .r1cs import CircuitBuilder, lc_const, lc_sub

REDACTION_BYTE = 32


@dataclass(frozen=True)
class ClaimSpec:
    kind: str                 # "range" | "compare"
    key: str = None           # range: claimed field
    lo: int = None
    hi: int = None
    key_a: str = None         # compare: left field
    key_b: str = None         # compare: right field
    relation: str = None      # ">", ">=", "="

    def __post_init__(self):
        if self.kind == "range":
            if self.key is None or self.lo is None or self.hi is None:
                raise ValueError("range claim needs key, lo, hi")
            if not (0 <= self.lo <= self.hi < 2 ** 64):
                raise ValueError("range bounds must satisfy 0 <= lo <= hi < 2^64")
        elif self.kind == "compare":
            if self.key_a is None or self.key_b is None:
                raise ValueError("compare claim needs key_a and key_b")
            if self.relation not in (">", ">=", "="):
                raise ValueError(f"unknown relation {self.relation!r}")
        else:
            raise ValueError(f"unknown claim kind {self.kind!r}")


RELATION_IDS = {">": 1, ">=": 2, "=": 3}


class _CircuitBase:
    """Built circuit plus the wire map needed to assign witnesses."""

    def __init__(self, template):
        self.template = template
        self.builder = CircuitBuilder()
        self.cs = None

    @property
    def n(self):
        return self.template.max_buffer_len

    def _signature_core(self, b, x_lcs, pk_wires, r_wires, s_wire):
        """Hash the buffer in-circuit and verify the signature over it."""
        chunks = gadgets.pack_chunks(x_lcs)
        digest = gadgets.mimc_multi_gadget(b, chunks)
        pk = ({pk_wires[0]: 1}, {pk_wires[1]: 1})
        R = ({r_wires[0]: 1}, {r_wires[1]: 1})
        gadgets.eddsa_verify_gadget(b, pk, R, {s_wire: 1}, digest)
        return digest


class RedactionCircuit(_CircuitBase):
    """Public: redacted bytes out[0..N), pk.x, pk.y. Private: buffer,
    mask bits, signature (R, s)."""

    def __init__(self, template):
        super().__init__(template)
        if self.n <= 0:
            raise TemplateError("buffer length must be positive")
        b = self.builder
        n = self.n
        self.out_wires = [b.alloc_public() for _ in range(n)]
        self.pk_wires = (b.alloc_public(), b.alloc_public())
        self.x_wires = [b.alloc_private() for _ in range(n)]
        self.mask_wires = [b.alloc_private() for _ in range(n)]
        self.r_wires = (b.alloc_private(), b.alloc_private())
        self.s_wire = b.alloc_private()

        for i in range(n):
            x = {self.x_wires[i]: 1}
            m = {self.mask_wires[i]: 1}
            out = {self.out_wires[i]: 1}
            b.enforce_boolean(m)
            gadgets.enforce_byte_range(b, x)
            # out = x*(1-m) + 32*m  <=>  m*(x-32) = x - out
            b.enforce(m, lc_sub(x, lc_const(REDACTION_BYTE)), lc_sub(x, out))
            b.set_hint(self.out_wires[i],
                       lambda w, xi=self.x_wires[i], mi=self.mask_wires[i]:
                       REDACTION_BYTE if w[mi] else w[xi])

        x_lcs = [{wire: 1} for wire in self.x_wires]
        self._signature_core(b, x_lcs, self.pk_wires, self.r_wires, self.s_wire)
        self.cs = b.build()

    def assign(self, buffer_bytes, mask_bits, sig, pk) -> list:
        """Full witness; the public section is derived by the circuit's
        own redaction rule, not the host oracle."""
        n = self.n
        if len(buffer_bytes) != n or len(mask_bits) != n:
            raise MaskError("buffer/mask length does not match circuit size")
        inputs = {}
        for wire, byte in zip(self.x_wires, buffer_bytes):
            inputs[wire] = byte
        for wire, bit in zip(self.mask_wires, mask_bits):
            if bit not in (0, 1):
                raise MaskError("mask bits must be 0 or 1")
            inputs[wire] = bit
        inputs[self.pk_wires[0]], inputs[self.pk_wires[1]] = pk.point
        inputs[self.r_wires[0]], inputs[self.r_wires[1]] = sig.R
        inputs[self.s_wire] = sig.s
        return self.builder.derive_witness(inputs)

    def public_signals(self, values) -> list:
        return values[1:1 + self.cs.num_public]


def build_redaction_circuit(template) -> RedactionCircuit:
    return RedactionCircuit(template)


def assign_redaction_witness(bundle, mask, template) -> list:
    """Witness for the redaction circuit of ``template``.

    Checks the signature host-side first so a tampered bundle fails
    fast, before any constraint work.
    """
    buf = canonicalize(bundle.doc, template)
    if not verify_sig(bundle.pk, hash_document(buf.data), bundle.sig):
        raise SignatureMismatch("tax information and signature did not match")
    if len(mask.bits) != template.max_buffer_len:
        raise MaskError("mask length does not match template buffer size")
    circuit = build_redaction_circuit(template)
    return circuit.assign(list(buf.data), list(mask.bits), bundle.sig, bundle.pk)


def _numeric_window(template, layout, key):
    fmap = template.field_map()
    if key not in fmap:
        raise DocumentError(f"unknown field key: {key!r}")
    if fmap[key].kind != KIND_NUMERIC:
        raise DocumentError(f"field {key!r} is not numeric-kind")
    if key not in layout:
        raise DocumentError(f"field {key!r} missing from layout")
    start, end = layout[key]
    if end - start > 20:
        raise DocumentError(f"value of {key!r} longer than 20 bytes")
    return start, end


class _ClaimCircuitBase(_CircuitBase):
    def _private_core(self, b):
        n = self.n
        self.x_wires = [b.alloc_private() for _ in range(n)]
        self.r_wires = (b.alloc_private(), b.alloc_private())
        self.s_wire = b.alloc_private()
        x_lcs = [{wire: 1} for wire in self.x_wires]
        for lc in x_lcs:
            gadgets.enforce_byte_range(b, lc)
        self._signature_core(b, x_lcs, self.pk_wires, self.r_wires, self.s_wire)
        return x_lcs

    def assign(self, buffer_bytes, sig, pk, public_values) -> list:
        inputs = dict(public_values)
        for wire, byte in zip(self.x_wires, buffer_bytes):
            inputs[wire] = byte
        inputs[self.pk_wires[0]], inputs[self.pk_wires[1]] = pk.point
        inputs[self.r_wires[0]], inputs[self.r_wires[1]] = sig.R
        inputs[self.s_wire] = sig.s
        return self.builder.derive_witness(inputs)


class RangeCircuit(_ClaimCircuitBase):
    """Public: lo, hi, pk.x, pk.y. Proves lo <= value(key) <= hi."""

    def __init__(self, template, spec: ClaimSpec, layout):
        super().__init__(template)
        assert spec.kind == "range"
        self.spec = spec
        b = self.builder
        self.lo_wire = b.alloc_public()
        self.hi_wire = b.alloc_public()
        self.pk_wires = (b.alloc_public(), b.alloc_public())
        x_lcs = self._private_core(b)
        start, end = _numeric_window(template, layout, spec.key)
        value = gadgets.ascii_to_uint_gadget(b, x_lcs[start:end])
        lo = {self.lo_wire: 1}
        hi = {self.hi_wire: 1}
        gadgets.bit_decompose(b, value, 64)
        gadgets.bit_decompose(b, lc_sub(value, lo), 64)
        gadgets.bit_decompose(b, lc_sub(hi, value), 64)
        self.cs = b.build()

    def assign_claim(self, buffer_bytes, sig, pk) -> list:
        pub = {self.lo_wire: self.spec.lo, self.hi_wire: self.spec.hi}
        return self.assign(buffer_bytes, sig, pk, pub)


class ComparisonCircuit(_ClaimCircuitBase):
    """Public: relation id, pk.x, pk.y. Proves value(key_a) rel value(key_b)."""

    def __init__(self, template, spec: ClaimSpec, layout):
        super().__init__(template)
        assert spec.kind == "compare"
        self.spec = spec
        b = self.builder
        self.rel_wire = b.alloc_public()
        self.pk_wires = (b.alloc_public(), b.alloc_public())
        rel_id = RELATION_IDS[spec.relation]
        b.enforce_equal({self.rel_wire: 1}, lc_const(rel_id))
        x_lcs = self._private_core(b)
        sa, ea = _numeric_window(template, layout, spec.key_a)
        sb, eb = _numeric_window(template, layout, spec.key_b)
        va = gadgets.ascii_to_uint_gadget(b, x_lcs[sa:ea])
        vb = gadgets.ascii_to_uint_gadget(b, x_lcs[sb:eb])
        gadgets.bit_decompose(b, va, 64)
        gadgets.bit_decompose(b, vb, 64)
        if spec.relation == ">":
            gadgets.bit_decompose(b, lc_sub(lc_sub(va, vb), lc_const(1)), 64)
        elif spec.relation == ">=":
            gadgets.bit_decompose(b, lc_sub(va, vb), 64)
        else:
            b.enforce_equal(va, vb)
        self.cs = b.build()

    def assign_claim(self, buffer_bytes, sig, pk) -> list:
        pub = {self.rel_wire: RELATION_IDS[self.spec.relation]}
        return self.assign(buffer_bytes, sig, pk, pub)


def build_range_circuit(template, spec: ClaimSpec, layout) -> RangeCircuit:
    return RangeCircuit(template, spec, layout)


def build_comparison_circuit(template, spec: ClaimSpec, layout) -> ComparisonCircuit:
    return ComparisonCircuit(template, spec, layout)


def claim_layout(doc, template) -> dict:
    """Value-byte layout of a document, for claim-circuit construction."""
    return value_layout(doc, template)
