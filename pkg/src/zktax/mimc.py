"""MiMC-7 over the BN254 scalar field, plus document hashing.

Round constants follow the circuit-ecosystem convention: c_0 = 0 and
c_i = Keccak-256 iterated i times over the ASCII seed, reduced mod P.
91 rounds = ceil(log_7(2^254)). Multi-element hashing chains blocks in
Miyaguchi-Preneel style so the compression is one-way per absorbed
element.
"""

from functools import lru_cache

from .field import P
from .keccak import keccak256, keccak256_int

ROUNDS = 91
SEED = "mimc"


@lru_cache(maxsize=8)
def derive_round_constants(seed: str = SEED, n: int = ROUNDS) -> tuple:
    if n < 1:
        raise ValueError("need at least one round constant")
    constants = [0]
    digest = seed.encode("ascii")
    for _ in range(n - 1):
        digest = keccak256(digest)
        constants.append(int.from_bytes(digest, "big") % P)
    return tuple(constants)


def mimc7_block(x: int, k: int) -> int:
    t = x % P
    k = k % P
    for c in derive_round_constants():
        t = pow((t + k + c) % P, 7, P)
    return (t + k) % P


def mimc7_multi(inputs, key: int = 0) -> int:
    """Hash a nonempty sequence of field elements to one element."""
    inputs = list(inputs)
    if not inputs:
        raise ValueError("mimc7_multi needs at least one input")
    h = key % P
    for x in inputs:
        x = x % P
        h = (mimc7_block(x, h) + x + h) % P
    return h


PACK_CHUNK = 31  # bytes per field element; 31*8 = 248 < 254 bits


def pack_bytes(data) -> list:
    """Pack 7-bit bytes into field elements, 31 per element, big-endian.

    The final short chunk is zero-padded on the right so a buffer's
    packing depends only on its bytes.
    """
    elements = []
    for off in range(0, len(data), PACK_CHUNK):
        chunk = list(data[off:off + PACK_CHUNK])
        for b in chunk:
            if not 0 <= b < 128:
                raise ValueError("byte out of ASCII range: %r" % (b,))
        chunk += [0] * (PACK_CHUNK - len(chunk))
        acc = 0
        for b in chunk:
            acc = (acc << 8) | b
        elements.append(acc % P)
    return elements


def hash_document(data) -> int:
    """Digest of a canonical buffer; must match the in-circuit hash."""
    return mimc7_multi(pack_bytes(data), 0)


def keccak_int(data: bytes) -> int:
    return keccak256_int(data)
