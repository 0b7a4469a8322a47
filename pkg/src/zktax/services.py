"""Three-party orchestration: TTS signing, local Redact & Prove, Verify.

Library functions first; thin FastAPI apps wrap them at the bottom. The
prove facade binds to loopback only — private tax data never leaves the
taxpayer's machine.
"""

from dataclasses import dataclass

from . import groth16
from .circuits import build_redaction_circuit, assign_redaction_witness
from .eddsa import PublicKey, SecretKey, Signature, sign_digest
from .errors import ArtifactError, DocumentError, ZkTaxError
from .forms import (FormTemplate, TaxDocument, apply_mask_plain, buffer_from_bytes,
                    canonicalize, fields_to_mask, parse_buffer, validate_document,
                    value_layout)
from .mimc import hash_document

REASON_BAD_PROOF = "BAD_PROOF"
REASON_UNTRUSTED_SIGNER = "UNTRUSTED_SIGNER"
REASON_CIRCUIT_MISMATCH = "CIRCUIT_MISMATCH"
REASON_MALFORMED = "MALFORMED"

# ------------------------------------------------------------- types -----


@dataclass
class SignedDocumentBundle:
    """TTS output. Private to the taxpayer end-to-end."""
    doc: TaxDocument
    sig: Signature
    pk: PublicKey
    template_id: str

    def to_json_obj(self):
        return {
            "template_id": self.template_id,
            "document": dict(self.doc.values),
            "signature": self.sig.to_json_obj(),
            "pk": self.pk.to_json_obj(),
        }

    @classmethod
    def from_json_obj(cls, obj):
        try:
            return cls(
                doc=TaxDocument(obj["template_id"], dict(obj["document"])),
                sig=Signature.from_json_obj(obj["signature"]),
                pk=PublicKey.from_json_obj(obj["pk"]),
                template_id=obj["template_id"],
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ArtifactError(f"malformed signed bundle: {exc}") from exc


@dataclass
class DisclosureBundle:
    """The shareable artifact: proof + public signals + routing metadata."""
    proof: dict          # proof.json content
    signals: list        # signals.json content (decimal strings)
    template_id: str
    circuit_digest: str
    rendering: dict = None  # optional human-readable redacted values

    def manifest(self):
        return {
            "template_id": self.template_id,
            "circuit_digest": self.circuit_digest,
            "artifacts": ["proof.json", "signals.json"],
            "rendering": self.rendering,
        }

    def to_json_obj(self):
        return {
            "proof": self.proof,
            "signals": self.signals,
            "manifest": self.manifest(),
        }

    @classmethod
    def from_json_obj(cls, obj):
        try:
            manifest = obj.get("manifest") or {}
            return cls(
                proof=obj["proof"],
                signals=list(obj["signals"]),
                template_id=manifest.get("template_id"),
                circuit_digest=manifest.get("circuit_digest"),
                rendering=manifest.get("rendering"),
            )
        except (KeyError, TypeError) as exc:
            raise ArtifactError(f"malformed disclosure bundle: {exc}") from exc


@dataclass
class VerdictReport:
    verdict: str                     # "accepted" | "rejected"
    reason: str = None               # reject reason code
    document: TaxDocument = None     # recovered redacted document (accept)
    signer: str = None               # matched trusted key label
    insecure_setup: bool = False
    detail: str = None

    @property
    def accepted(self):
        return self.verdict == "accepted"

    def to_json_obj(self):
        return {
            "verdict": self.verdict,
            "reason": self.reason,
            "document": dict(self.document.values) if self.document else None,
            "signer": self.signer,
            "insecure_setup": self.insecure_setup,
            "detail": self.detail,
        }

# -------------------------------------------------------- operations -----


def tts_sign_document(doc: TaxDocument, template: FormTemplate,
                      key: SecretKey) -> SignedDocumentBundle:
    """Canonicalize, hash, sign. The TTS never interacts again."""
    validate_document(doc, template)
    buf = canonicalize(doc, template)
    sig = sign_digest(key, hash_document(buf.data))
    from .babyjubjub import BASE, scalar_mul
    pk = PublicKey(scalar_mul(key.scalar, BASE))
    return SignedDocumentBundle(doc=doc, sig=sig, pk=pk,
                                template_id=template.template_id)


def redact_and_prove(bundle: SignedDocumentBundle, redact_keys, template:
                     FormTemplate, proving_key, entropy=None) -> DisclosureBundle:
    """Mask construction then proof generation, entirely local."""
    if bundle.template_id != template.template_id:
        raise DocumentError("bundle and template identifiers differ")
    circuit = build_redaction_circuit(template)
    groth16.check_key_pair(proving_key, circuit.cs)
    mask = fields_to_mask(bundle.doc, redact_keys, template)
    witness = assign_redaction_witness(bundle, mask, template)
    proof, signals = groth16.prove(proving_key, witness, entropy)
    proof_obj, signals_obj = groth16.export_artifacts(proof, signals)
    redacted = apply_mask_plain(canonicalize(bundle.doc, template), mask)
    rendering = dict(parse_buffer(redacted, template).values)
    return DisclosureBundle(
        proof=proof_obj, signals=signals_obj,
        template_id=template.template_id,
        circuit_digest=proving_key.circuit_digest,
        rendering=rendering)


def _reject(reason, detail=None, insecure=False):
    return VerdictReport(verdict="rejected", reason=reason, detail=detail,
                         insecure_setup=insecure)


def verify_bundle(d: DisclosureBundle, vk, trusted_keys: dict,
                  template: FormTemplate) -> VerdictReport:
    """Total: every failure is a reject with a reason, never an exception."""
    insecure = bool(getattr(vk, "dev_insecure", False))
    try:
        if d.circuit_digest is not None and d.circuit_digest != vk.circuit_digest:
            return _reject(REASON_CIRCUIT_MISMATCH,
                           "disclosure names a different circuit", insecure)
        try:
            proof, signals = groth16.import_artifacts(d.proof, d.signals)
        except ArtifactError as exc:
            return _reject(REASON_MALFORMED, str(exc), insecure)
        n = template.max_buffer_len
        if len(signals) != n + 2:
            return _reject(REASON_MALFORMED,
                           "signal count does not match template", insecure)
        if not groth16.verify_proof(vk, proof, signals):
            return _reject(REASON_BAD_PROOF, "pairing check failed", insecure)
        pk = PublicKey((signals[n], signals[n + 1]))
        label = None
        for name, trusted in trusted_keys.items():
            if trusted.point == pk.point:
                label = name
                break
        if label is None:
            return _reject(REASON_UNTRUSTED_SIGNER,
                           "signer key not in the trusted set", insecure)
        byte_vals = signals[:n]
        if any(not 0 <= b < 128 for b in byte_vals):
            return _reject(REASON_MALFORMED, "non-ASCII signal byte", insecure)
        buf = buffer_from_bytes(bytes(byte_vals), n)
        doc = parse_buffer(buf, template)
        return VerdictReport(verdict="accepted", document=doc, signer=label,
                             insecure_setup=insecure)
    except ZkTaxError as exc:
        return _reject(REASON_MALFORMED, str(exc), insecure)
    except (TypeError, ValueError, KeyError, AttributeError) as exc:
        return _reject(REASON_MALFORMED, f"unreadable bundle: {exc}", insecure)

# ---------------------------------------------------------- HTTP apps ----
#
# Imported lazily so the core library works without fastapi installed.


def _json_error(code, message, status=400):
    from fastapi.responses import JSONResponse
    return JSONResponse(status_code=status,
                        content={"code": code, "message": message})


def _install_error_handlers(app):
    from fastapi import Request
    from fastapi.exceptions import RequestValidationError

    @app.exception_handler(ZkTaxError)
    async def _zktax_error(request: Request, exc: ZkTaxError):
        return _json_error(type(exc).__name__, str(exc))

    @app.exception_handler(RequestValidationError)
    async def _validation_error(request: Request, exc):
        return _json_error("ValidationError", str(exc), status=422)


def create_tts_app(secret_key: SecretKey, templates: dict, label: str = "tts"):
    """TTS service: POST /sign, GET /pubkey. Stateless."""
    from fastapi import FastAPI
    app = FastAPI(title="zktax TTS")
    _install_error_handlers(app)
    from .babyjubjub import BASE, scalar_mul
    pk = PublicKey(scalar_mul(secret_key.scalar, BASE))

    @app.post("/sign")
    async def sign(payload: dict):
        template_id = payload.get("template_id")
        if template_id not in templates:
            return _json_error("TemplateError",
                               f"unknown template_id: {template_id!r}", 404)
        template = templates[template_id]
        values = payload.get("document")
        if not isinstance(values, dict):
            return _json_error("DocumentError", "document must be an object")
        doc = TaxDocument(template_id, {k: str(v) for k, v in values.items()})
        bundle = tts_sign_document(doc, template, secret_key)
        return bundle.to_json_obj()

    @app.get("/pubkey")
    async def pubkey():
        return {"label": label, "pk": pk.to_json_obj()}

    return app


def create_verify_app(vk, trusted_keys: dict, templates: dict):
    """Verify service: POST /verify, GET /trusted-keys."""
    from fastapi import FastAPI
    app = FastAPI(title="zktax Verify")
    _install_error_handlers(app)

    @app.post("/verify")
    async def verify(payload: dict):
        template_id = payload.get("template_id")
        if template_id not in templates:
            return _json_error("TemplateError",
                               f"unknown template_id: {template_id!r}", 404)
        d = DisclosureBundle(
            proof=payload.get("proof"),
            signals=payload.get("signals"),
            template_id=template_id,
            circuit_digest=payload.get("circuit_digest"),
        )
        report = verify_bundle(d, vk, trusted_keys, templates[template_id])
        return report.to_json_obj()

    @app.get("/trusted-keys")
    async def list_trusted():
        return {name: key.to_json_obj() for name, key in trusted_keys.items()}

    return app


def create_local_app(bundle: SignedDocumentBundle, template: FormTemplate,
                     proving_key, static_dir=None):
    """Loopback-only Redact & Prove facade for the browser UI.

    Holds one signed bundle; GET /document shows its fields, POST /prove
    produces a disclosure for the requested redaction set.
    """
    from fastapi import FastAPI
    app = FastAPI(title="zktax local facade")
    _install_error_handlers(app)

    @app.get("/document")
    async def document():
        layout = value_layout(bundle.doc, template)
        fields = [{
            "key": f.key,
            "label": f.label,
            "kind": f.kind,
            "value": bundle.doc.values.get(f.key),
            "present": f.key in bundle.doc.values,
            "span": list(layout[f.key]) if f.key in layout else None,
        } for f in template.fields]
        return {"template_id": template.template_id, "fields": fields}

    @app.post("/prove")
    async def prove(payload: dict):
        keys = payload.get("redact_keys")
        if not isinstance(keys, list) or not all(isinstance(k, str) for k in keys):
            return _json_error("MaskError", "redact_keys must be a string array")
        disclosure = redact_and_prove(bundle, set(keys), template, proving_key)
        return disclosure.to_json_obj()

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles
        app.mount("/", StaticFiles(directory=str(static_dir), html=True),
                  name="ui")

    return app


def run_app(app, port: int, host: str = "127.0.0.1"):
    """Serve an app; the prove facade must stay on loopback."""
    import ipaddress
    if app.title == "zktax local facade" and \
            not ipaddress.ip_address(host).is_loopback:
        raise ZkTaxError("the local facade only binds to loopback addresses")
    import uvicorn
    uvicorn.run(app, host=host, port=port, log_level="warning")
