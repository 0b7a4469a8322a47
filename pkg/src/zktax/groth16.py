"""Groth16 proving backend over BN254.

The trusted setup here is LOCAL AND SINGLE-PARTY: whoever runs it learns
the toxic waste, so the resulting parameters are for development and
testing only. Both keys carry a DEV-INSECURE marker and verifiers
surface it.

Artifact formats (proof.json / signals.json / verification_key.json) are
pinned: field elements as decimal strings, G2 coordinates as [a, b]
pairs meaning a + b*u.
"""

import json
import os
from dataclasses import dataclass

from . import bn254 as ec
from .errors import ArtifactError, CircuitMismatch, UnsatisfiedWitness, ZkTaxError
from .field import P, inv, root_of_unity
from .keccak import keccak256_int
from .r1cs import ConstraintSystem, lc_eval

DEV_INSECURE_MARKER = "DEV-INSECURE-LOCAL-SETUP"

# ------------------------------------------------------------------ NTT --


def _ntt(values, omega):
    n = len(values)
    a = list(values)
    j = 0
    for i in range(1, n):
        bit = n >> 1
        while j & bit:
            j ^= bit
            bit >>= 1
        j |= bit
        if i < j:
            a[i], a[j] = a[j], a[i]
    length = 2
    while length <= n:
        wlen = pow(omega, n // length, P)
        for start in range(0, n, length):
            w = 1
            half = length >> 1
            for k in range(start, start + half):
                u = a[k]
                v = a[k + half] * w % P
                a[k] = (u + v) % P
                a[k + half] = (u - v) % P
                w = w * wlen % P
        length <<= 1
    return a


def _intt(values, omega):
    n = len(values)
    out = _ntt(values, pow(omega, P - 2, P))
    n_inv = inv(n)
    return [v * n_inv % P for v in out]

# ------------------------------------------------------------- objects ---


@dataclass
class Proof:
    a: tuple  # G1
    b: tuple  # G2
    c: tuple  # G1


@dataclass
class ProvingKey:
    circuit_digest: str
    marker: str
    domain: int
    num_public: int
    alpha1: tuple
    beta1: tuple
    delta1: tuple
    beta2: tuple
    delta2: tuple
    a_query: list      # per wire
    b1_query: list     # per wire
    b2_query: list     # per wire
    l_query: list      # per private wire (wires num_public+1 ..)
    h_query: list      # domain-1 elements
    constraints: ConstraintSystem


@dataclass
class VerifyingKey:
    circuit_digest: str
    marker: str
    alpha1: tuple
    beta2: tuple
    gamma2: tuple
    delta2: tuple
    ic: list  # num_public + 1 G1 points

    @property
    def dev_insecure(self) -> bool:
        return self.marker == DEV_INSECURE_MARKER

# --------------------------------------------------------------- setup ---


def _derive_scalar(entropy: bytes, tag: bytes) -> int:
    counter = 0
    while True:
        v = keccak256_int(entropy + tag + counter.to_bytes(4, "big")) % P
        if v != 0:
            return v
        counter += 1


def trusted_setup(cs: ConstraintSystem, entropy: bytes):
    """Generate Groth16 parameters for one circuit. Local, insecure."""
    if len(entropy) < 32:
        raise ZkTaxError("setup entropy must be at least 32 bytes")
    tau = _derive_scalar(entropy, b"tau")
    alpha = _derive_scalar(entropy, b"alpha")
    beta = _derive_scalar(entropy, b"beta")
    gamma = _derive_scalar(entropy, b"gamma")
    delta = _derive_scalar(entropy, b"delta")

    n_cons = len(cs.constraints)
    domain = 1
    while domain < n_cons:
        domain *= 2
    omega = root_of_unity(domain)

    # L_j(tau) for all j, via the inverse NTT of the powers of tau
    powers = [1] * domain
    for i in range(1, domain):
        powers[i] = powers[i - 1] * tau % P
    lag = _intt(powers, omega)

    m = cs.num_vars
    a_tau = [0] * m
    b_tau = [0] * m
    c_tau = [0] * m
    for j, (a, b, c) in enumerate(cs.constraints):
        lj = lag[j]
        for idx, coeff in a.items():
            a_tau[idx] = (a_tau[idx] + lj * coeff) % P
        for idx, coeff in b.items():
            b_tau[idx] = (b_tau[idx] + lj * coeff) % P
        for idx, coeff in c.items():
            c_tau[idx] = (c_tau[idx] + lj * coeff) % P

    z_tau = (pow(tau, domain, P) - 1) % P
    gamma_inv = inv(gamma)
    delta_inv = inv(delta)

    g1_tab = ec.FixedBaseTable(ec.G1_GEN, "g1", window=8)
    g2_tab = ec.FixedBaseTable(ec.G2_GEN, "g2", window=8)

    a_query = g1_tab.mul_many(a_tau)
    b1_query = g1_tab.mul_many(b_tau)
    b2_query = g2_tab.mul_many(b_tau)

    k_scalars = [(beta * a_tau[i] + alpha * b_tau[i] + c_tau[i]) % P
                 for i in range(m)]
    ic = g1_tab.mul_many(
        [k_scalars[i] * gamma_inv % P for i in range(cs.num_public + 1)])
    l_query = g1_tab.mul_many(
        [k_scalars[i] * delta_inv % P for i in range(cs.num_public + 1, m)])

    h_scalars = []
    t_pow = z_tau * delta_inv % P
    for _ in range(domain - 1):
        h_scalars.append(t_pow)
        t_pow = t_pow * tau % P
    h_query = g1_tab.mul_many(h_scalars)

    digest = cs.digest()
    pk = ProvingKey(
        circuit_digest=digest, marker=DEV_INSECURE_MARKER, domain=domain,
        num_public=cs.num_public,
        alpha1=g1_tab.mul(alpha), beta1=g1_tab.mul(beta),
        delta1=g1_tab.mul(delta), beta2=g2_tab.mul(beta),
        delta2=g2_tab.mul(delta),
        a_query=a_query, b1_query=b1_query, b2_query=b2_query,
        l_query=l_query, h_query=h_query, constraints=cs)
    vk = VerifyingKey(
        circuit_digest=digest, marker=DEV_INSECURE_MARKER,
        alpha1=pk.alpha1, beta2=pk.beta2, gamma2=g2_tab.mul(gamma),
        delta2=pk.delta2, ic=ic)
    return pk, vk

# --------------------------------------------------------------- prove ---


def prove(pk: ProvingKey, witness: list, entropy: bytes = None):
    """Proof plus public signals for a satisfying witness.

    ``entropy`` blinds the proof (fresh random bytes unless the caller
    pins it for reproducibility).
    """
    if entropy is None:
        entropy = os.urandom(32)
    cs = pk.constraints
    if len(witness) != cs.num_vars:
        raise UnsatisfiedWitness(-1, "witness length mismatch")
    witness = [w % P for w in witness]

    aw, bw, cw = [], [], []
    for j, (a, b, c) in enumerate(cs.constraints):
        va = lc_eval(a, witness)
        vb = lc_eval(b, witness)
        vc = lc_eval(c, witness)
        if va * vb % P != vc:
            raise UnsatisfiedWitness(j)
        aw.append(va)
        bw.append(vb)
        cw.append(vc)

    domain = pk.domain
    omega = root_of_unity(domain)
    pad = [0] * (domain - len(aw))
    coef_a = _intt(aw + pad, omega)
    coef_b = _intt(bw + pad, omega)
    coef_c = _intt(cw + pad, omega)

    # coset evaluation; on the shifted domain Z(x) = shift^domain - 1
    shift = root_of_unity(2 * domain)
    shift_pows = [1] * domain
    for i in range(1, domain):
        shift_pows[i] = shift_pows[i - 1] * shift % P
    ea = _ntt([c * s % P for c, s in zip(coef_a, shift_pows)], omega)
    eb = _ntt([c * s % P for c, s in zip(coef_b, shift_pows)], omega)
    ecv = _ntt([c * s % P for c, s in zip(coef_c, shift_pows)], omega)
    z_inv = inv((pow(shift, domain, P) - 1) % P)
    eh = [(a * b - c) % P * z_inv % P for a, b, c in zip(ea, eb, ecv)]
    coef_h = _intt(eh, omega)
    shift_inv = inv(shift)
    si = 1
    for i in range(domain):
        coef_h[i] = coef_h[i] * si % P
        si = si * shift_inv % P
    h_vals = coef_h[:domain - 1]

    r = _derive_scalar(entropy, b"prove-r")
    s = _derive_scalar(entropy, b"prove-s")

    a1 = ec.g1_msm(pk.a_query, witness)
    a1 = _g1_sum([pk.alpha1, a1, ec.g1_mul(pk.delta1, r)])
    b1 = ec.g1_msm(pk.b1_query, witness)
    b1 = _g1_sum([pk.beta1, b1, ec.g1_mul(pk.delta1, s)])
    b2 = ec.g2_msm(pk.b2_query, witness)
    b2 = _g2_sum([pk.beta2, b2, ec.g2_mul(pk.delta2, s)])

    priv = witness[pk.num_public + 1:]
    c_pt = _g1_sum([
        ec.g1_msm(pk.l_query, priv),
        ec.g1_msm(pk.h_query, h_vals),
        ec.g1_mul(a1, s),
        ec.g1_mul(b1, r),
        ec.g1_neg(ec.g1_mul(pk.delta1, r * s % P)),
    ])
    signals = witness[1:pk.num_public + 1]
    return Proof(a=a1, b=b2, c=c_pt), signals


def _g1_sum(points):
    acc = ec.G1_INF
    for p in points:
        if p is not None:
            acc = ec.g1_jac_add(acc, ec.g1_to_jac(p))
    return ec.g1_to_affine(acc)


def _g2_sum(points):
    acc = ec.G2_INF
    for p in points:
        if p is not None:
            acc = ec.g2_jac_add(acc, ec.g2_to_jac(p))
    return ec.g2_to_affine(acc)

# -------------------------------------------------------------- verify ---


def verify_proof(vk: VerifyingKey, proof: Proof, signals) -> bool:
    """Total function: malformed input is a rejection, not an error."""
    try:
        if len(signals) != len(vk.ic) - 1:
            return False
        sig = [int(s) for s in signals]
        if any(not 0 <= s < P for s in sig):
            return False
        if not (ec.g1_on_curve(proof.a) and ec.g1_on_curve(proof.c)):
            return False
        if not ec.g2_in_subgroup(proof.b):
            return False
        acc = ec.g1_to_jac(vk.ic[0])
        vk_x_parts = ec.g1_msm(vk.ic[1:], sig)
        if vk_x_parts is not None:
            acc = ec.g1_jac_add(acc, ec.g1_to_jac(vk_x_parts))
        vk_x = ec.g1_to_affine(acc)
        return ec.multi_pairing_is_one([
            (ec.g1_neg(proof.a), proof.b),
            (vk.alpha1, vk.beta2),
            (vk_x, vk.gamma2),
            (proof.c, vk.delta2),
        ])
    except (TypeError, ValueError, IndexError, AttributeError):
        return False

# ----------------------------------------------------------- artifacts ---


def _g1_json(pt):
    if pt is None:
        return ["0", "0"]
    return [str(pt[0]), str(pt[1])]


def _g2_json(pt):
    if pt is None:
        return [["0", "0"], ["0", "0"]]
    return [[str(pt[0][0]), str(pt[0][1])], [str(pt[1][0]), str(pt[1][1])]]


def _g1_from_json(obj):
    x, y = int(obj[0]), int(obj[1])
    if (x, y) == (0, 0):
        return None
    pt = (x, y)
    if not ec.g1_on_curve(pt):
        raise ArtifactError("G1 point not on curve")
    return pt


def _g2_from_json(obj):
    x = (int(obj[0][0]), int(obj[0][1]))
    y = (int(obj[1][0]), int(obj[1][1]))
    if x == (0, 0) and y == (0, 0):
        return None
    pt = (x, y)
    if not ec.g2_on_curve(pt):
        raise ArtifactError("G2 point not on curve")
    return pt


def export_artifacts(proof: Proof, signals):
    """(proof.json content, signals.json content) as JSON-ready objects."""
    proof_obj = {
        "protocol": "groth16",
        "curve": "bn254",
        "pi_a": _g1_json(proof.a),
        "pi_b": _g2_json(proof.b),
        "pi_c": _g1_json(proof.c),
    }
    signals_obj = [str(s) for s in signals]
    return proof_obj, signals_obj


def import_artifacts(proof_obj, signals_obj):
    try:
        if proof_obj.get("protocol") != "groth16":
            raise ArtifactError("unsupported protocol tag")
        if proof_obj.get("curve") != "bn254":
            raise ArtifactError("unsupported curve tag")
        proof = Proof(
            a=_g1_from_json(proof_obj["pi_a"]),
            b=_g2_from_json(proof_obj["pi_b"]),
            c=_g1_from_json(proof_obj["pi_c"]),
        )
        signals = [int(s) for s in signals_obj]
        if any(not 0 <= s < P for s in signals):
            raise ArtifactError("signal out of field range")
    except ArtifactError:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ArtifactError(f"malformed artifact: {exc}") from exc
    return proof, signals


def export_verifying_key(vk: VerifyingKey):
    return {
        "protocol": "groth16",
        "curve": "bn254",
        "circuit_digest": vk.circuit_digest,
        "setup_marker": vk.marker,
        "insecure_setup": vk.dev_insecure,
        "alpha_1": _g1_json(vk.alpha1),
        "beta_2": _g2_json(vk.beta2),
        "gamma_2": _g2_json(vk.gamma2),
        "delta_2": _g2_json(vk.delta2),
        "ic": [_g1_json(pt) for pt in vk.ic],
    }


def import_verifying_key(obj) -> VerifyingKey:
    try:
        return VerifyingKey(
            circuit_digest=obj["circuit_digest"],
            marker=obj["setup_marker"],
            alpha1=_g1_from_json(obj["alpha_1"]),
            beta2=_g2_from_json(obj["beta_2"]),
            gamma2=_g2_from_json(obj["gamma_2"]),
            delta2=_g2_from_json(obj["delta_2"]),
            ic=[_g1_from_json(p) for p in obj["ic"]],
        )
    except ArtifactError:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise ArtifactError(f"malformed verification key: {exc}") from exc


def check_key_pair(pk: ProvingKey, cs: ConstraintSystem):
    if pk.circuit_digest != cs.digest():
        raise CircuitMismatch("proving key bound to a different circuit")

# ----------------------------------------------------- key file helpers --


def save_proving_key(pk: ProvingKey, path):
    obj = {
        "circuit_digest": pk.circuit_digest,
        "setup_marker": pk.marker,
        "domain": pk.domain,
        "num_public": pk.num_public,
        "alpha_1": _g1_json(pk.alpha1),
        "beta_1": _g1_json(pk.beta1),
        "delta_1": _g1_json(pk.delta1),
        "beta_2": _g2_json(pk.beta2),
        "delta_2": _g2_json(pk.delta2),
        "a_query": [_g1_json(p) for p in pk.a_query],
        "b1_query": [_g1_json(p) for p in pk.b1_query],
        "b2_query": [_g2_json(p) for p in pk.b2_query],
        "l_query": [_g1_json(p) for p in pk.l_query],
        "h_query": [_g1_json(p) for p in pk.h_query],
        "constraints": pk.constraints.serialize().hex(),
    }
    with open(path, "w") as fh:
        json.dump(obj, fh)


def load_proving_key(path) -> ProvingKey:
    with open(path) as fh:
        obj = json.load(fh)
    try:
        return ProvingKey(
            circuit_digest=obj["circuit_digest"],
            marker=obj["setup_marker"],
            domain=obj["domain"],
            num_public=obj["num_public"],
            alpha1=_g1_from_json(obj["alpha_1"]),
            beta1=_g1_from_json(obj["beta_1"]),
            delta1=_g1_from_json(obj["delta_1"]),
            beta2=_g2_from_json(obj["beta_2"]),
            delta2=_g2_from_json(obj["delta_2"]),
            a_query=[_g1_from_json(p) for p in obj["a_query"]],
            b1_query=[_g1_from_json(p) for p in obj["b1_query"]],
            b2_query=[_g2_from_json(p) for p in obj["b2_query"]],
            l_query=[_g1_from_json(p) for p in obj["l_query"]],
            h_query=[_g1_from_json(p) for p in obj["h_query"]],
            constraints=ConstraintSystem.deserialize(
                bytes.fromhex(obj["constraints"])),
        )
    except ArtifactError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ArtifactError(f"malformed proving key: {exc}") from exc


def save_verifying_key(vk: VerifyingKey, path):
    with open(path, "w") as fh:
        json.dump(export_verifying_key(vk), fh)


def load_verifying_key(path) -> VerifyingKey:
    with open(path) as fh:
        return import_verifying_key(json.load(fh))
