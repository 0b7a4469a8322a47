import dataclasses
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from zktax.fixtures import form_1040_2020, sample_document  # noqa: E402


def small_template(n=155):
    return dataclasses.replace(form_1040_2020(), max_buffer_len=n)


@pytest.fixture(scope="session")
def template_1040():
    return form_1040_2020()


@pytest.fixture(scope="session")
def sample_doc():
    return sample_document()


@pytest.fixture(scope="session")
def rng():
    import random
    return random.Random(0x5EED)


@pytest.fixture(scope="session")
def pipeline155():
    """Shared small pipeline: template, circuit, Groth16 keys, TTS keypair."""
    from zktax.circuits import build_redaction_circuit
    from zktax.eddsa import keygen
    from zktax import groth16

    template = small_template(155)
    circuit = build_redaction_circuit(template)
    pk, vk = groth16.trusted_setup(circuit.cs, b"\xab" * 32)
    sk, tts_pk = keygen(b"\x42" * 32)
    return {
        "template": template,
        "circuit": circuit,
        "proving_key": pk,
        "verifying_key": vk,
        "tts_sk": sk,
        "tts_pk": tts_pk,
    }
