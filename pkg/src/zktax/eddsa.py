"""EdDSA on Baby Jubjub with a MiMC-7 challenge hash.

Signing is deterministic: the nonce is derived from the key seed and the
message digest, so the same (key, digest) pair always yields the same
signature. The challenge hash is MiMC-based so the verification relation
stays cheap inside the constraint system.
"""

import json
import os
from dataclasses import dataclass

from . import babyjubjub as bjj
from .field import P
from .keccak import keccak256_int
from .mimc import mimc7_multi


@dataclass(frozen=True)
class PublicKey:
    point: tuple  # (x, y) on Baby Jubjub, prime-order subgroup

    def to_json_obj(self):
        return {"x": str(self.point[0]), "y": str(self.point[1])}

    @classmethod
    def from_json_obj(cls, obj):
        return cls((int(obj["x"]), int(obj["y"])))


@dataclass(frozen=True)
class SecretKey:
    scalar: int
    seed: bytes

    def to_json_obj(self):
        return {"scalar": str(self.scalar), "seed": self.seed.hex()}

    @classmethod
    def from_json_obj(cls, obj):
        return cls(int(obj["scalar"]), bytes.fromhex(obj["seed"]))


@dataclass(frozen=True)
class Signature:
    R: tuple  # nonce commitment point
    s: int    # response scalar, < subgroup order

    def to_json_obj(self):
        return {"R": {"x": str(self.R[0]), "y": str(self.R[1])}, "s": str(self.s)}

    @classmethod
    def from_json_obj(cls, obj):
        return cls((int(obj["R"]["x"]), int(obj["R"]["y"])), int(obj["s"]))


def keygen(seed: bytes):
    """Derive a keypair from 32 random bytes."""
    if len(seed) != 32:
        raise ValueError("seed must be exactly 32 bytes")
    counter = 0
    while True:
        material = seed if counter == 0 else seed + counter.to_bytes(4, "big")
        s = keccak256_int(material) % bjj.SUBGROUP_ORDER
        if s != 0:
            break
        counter += 1
    pk = bjj.scalar_mul(s, bjj.BASE)
    return SecretKey(s, seed), PublicKey(pk)


def generate_keypair():
    return keygen(os.urandom(32))


def challenge(R, A, digest: int) -> int:
    """Fiat-Shamir challenge binding nonce, key and message."""
    return mimc7_multi([R[0], R[1], A[0], A[1], digest % P], 0)


def sign_digest(sk: SecretKey, digest: int) -> Signature:
    digest = digest % P
    r = keccak256_int(sk.seed + digest.to_bytes(32, "big")) % bjj.SUBGROUP_ORDER
    R = bjj.scalar_mul(r, bjj.BASE)
    A = bjj.scalar_mul(sk.scalar, bjj.BASE)
    c = challenge(R, A, digest)
    s = (r + c * sk.scalar) % bjj.SUBGROUP_ORDER
    return Signature(R, s)


def verify_sig(pk: PublicKey, digest: int, sig: Signature) -> bool:
    """Total function: malformed inputs yield False, never an exception."""
    try:
        digest = int(digest) % P
        A = pk.point
        R = sig.R
        s = int(sig.s)
        if not (0 <= s < bjj.SUBGROUP_ORDER):
            return False
        if not bjj.in_subgroup(A) or not bjj.in_subgroup(R):
            return False
        c = challenge(R, A, digest)
        lhs = bjj.scalar_mul(s, bjj.BASE)
        rhs = bjj.point_add(R, bjj.scalar_mul(c, A))
        return lhs == rhs
    except (TypeError, ValueError, AttributeError, IndexError):
        return False


def save_secret_key(sk: SecretKey, path):
    """Write key material with owner-only permissions."""
    data = json.dumps(sk.to_json_obj()).encode()
    fd = os.open(str(path), os.O_WRONLY | os.O_CREAT | os.O_TRUNC, 0o600)
    with os.fdopen(fd, "wb") as fh:
        fh.write(data)


def load_secret_key(path) -> SecretKey:
    with open(path) as fh:
        return SecretKey.from_json_obj(json.load(fh))


def save_public_key(pk: PublicKey, path):
    with open(path, "w") as fh:
        json.dump(pk.to_json_obj(), fh)


def load_public_key(path) -> PublicKey:
    with open(path) as fh:
        return PublicKey.from_json_obj(json.load(fh))
