"""zkTax: redactable signed tax documents with zero-knowledge proofs.

A tax authority signs a canonical encoding of a tax form; the taxpayer
produces a redacted copy plus a Groth16 proof that the redaction derives
from the signed original; anyone verifies the proof offline.
"""

from .eddsa import (PublicKey, SecretKey, Signature, generate_keypair,
                    keygen, sign_digest, verify_sig)
from .errors import (ArtifactError, BufferError_, CircuitMismatch,
                     DocumentError, MaskError, SignatureMismatch,
                     TemplateError, UnsatisfiedWitness, ZkTaxError)
from .forms import (AsciiBuffer, FormTemplate, RedactionMask, TaxDocument,
                    apply_mask_plain, canonicalize, fields_to_mask,
                    load_template, load_template_file, make_document,
                    parse_buffer, value_layout)
from .mimc import hash_document, mimc7_block, mimc7_multi, pack_bytes

__version__ = "0.1.0"
