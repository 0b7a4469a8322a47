"""Command-line entry point for the full pipeline.

Exit codes: 0 success, 1 verification reject, 2 usage error,
3 crypto/internal error. All output files are written atomically.
"""

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path

from . import groth16, services
from .circuits import build_redaction_circuit
from .eddsa import (generate_keypair, keygen, load_public_key, load_secret_key,
                    save_public_key, save_secret_key)
from .errors import (ArtifactError, DocumentError, MaskError, TemplateError,
                     ZkTaxError)
from .fixtures import form_1040_2020
from .forms import TaxDocument, load_template_file, make_document
from .services import DisclosureBundle, SignedDocumentBundle

EXIT_OK = 0
EXIT_REJECT = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3

ARTIFACT_DIR_ENV = "ZKTAX_ARTIFACT_DIR"

_USAGE_ERRORS = (TemplateError, DocumentError, MaskError, FileNotFoundError,
                 IsADirectoryError, NotADirectoryError, PermissionError,
                 json.JSONDecodeError)


def _atomic_write(path, text: str):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=str(path.parent),
                               prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _write_json(path, obj):
    _atomic_write(path, json.dumps(obj, indent=2) + "\n")


def _read_json(path):
    with open(path) as fh:
        return json.load(fh)


def _builtin_templates():
    tpl = form_1040_2020()
    return {tpl.template_id: tpl}


def _resolve_template(args, template_id=None):
    """--template wins; otherwise look the id up among built-in forms."""
    if getattr(args, "template", None):
        return load_template_file(args.template)
    registry = _builtin_templates()
    if template_id and template_id in registry:
        return registry[template_id]
    if template_id:
        raise TemplateError(
            f"unknown template {template_id!r}; pass --template")
    raise TemplateError("a --template file is required")


def _artifact_dir(args):
    if getattr(args, "artifacts", None):
        return Path(args.artifacts)
    env = os.environ.get(ARTIFACT_DIR_ENV)
    if env:
        return Path(env)
    return Path("zktax-artifacts")

# ------------------------------------------------------------ commands ---


def cmd_keygen(args):
    if args.seed is not None:
        sk, pk = keygen(bytes.fromhex(args.seed))
    else:
        sk, pk = generate_keypair()
    save_secret_key(sk, args.out)
    pub_path = args.pub or (str(args.out) + ".pub")
    save_public_key(pk, pub_path)
    print(f"wrote secret key {args.out} and public key {pub_path}")
    return EXIT_OK


def cmd_setup(args):
    template = _resolve_template(args, args.template_id)
    out = _artifact_dir(args)
    out.mkdir(parents=True, exist_ok=True)
    entropy = bytes.fromhex(args.entropy) if args.entropy else os.urandom(32)
    print(f"building redaction circuit for {template.template_id} "
          f"(N={template.max_buffer_len})...", file=sys.stderr)
    circuit = build_redaction_circuit(template)
    print(f"{len(circuit.cs.constraints)} constraints; running local setup "
          f"({groth16.DEV_INSECURE_MARKER})...", file=sys.stderr)
    pk, vk = groth16.trusted_setup(circuit.cs, entropy)
    pk_path = out / "proving.key"
    vk_path = out / "verification_key.json"
    groth16.save_proving_key(pk, pk_path)
    groth16.save_verifying_key(vk, vk_path)
    print(f"wrote {pk_path} and {vk_path} "
          f"(circuit digest {vk.circuit_digest[:16]}…)")
    return EXIT_OK


def _load_document(path, template):
    obj = _read_json(path)
    if isinstance(obj, dict) and "document" in obj:
        obj = obj["document"]
    if not isinstance(obj, dict):
        raise DocumentError("input must be a JSON object of field values")
    return make_document(template, {k: str(v) for k, v in obj.items()})


def cmd_sign(args):
    template = _resolve_template(args)
    doc = _load_document(args.infile, template)
    key = load_secret_key(args.key)
    bundle = services.tts_sign_document(doc, template, key)
    _write_json(args.out, bundle.to_json_obj())
    print(f"wrote signed bundle {args.out}")
    return EXIT_OK


def cmd_redact_prove(args):
    bundle = SignedDocumentBundle.from_json_obj(_read_json(args.bundle))
    template = _resolve_template(args, bundle.template_id)
    if args.redact is not None:
        redact = {k for k in args.redact.split(",") if k}
    else:
        keep = {k for k in args.redact_all_except.split(",") if k}
        unknown = keep - set(bundle.doc.values)
        if unknown:
            raise MaskError(f"unknown field names: {sorted(unknown)}")
        redact = set(bundle.doc.values) - keep
    proving_key = groth16.load_proving_key(args.pk)
    disclosure = services.redact_and_prove(bundle, redact, template,
                                           proving_key)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    _write_json(out / "proof.json", disclosure.proof)
    _write_json(out / "signals.json", disclosure.signals)
    _write_json(out / "manifest.json", disclosure.manifest())
    print(f"wrote disclosure to {out}/ (proof.json, signals.json, "
          f"manifest.json)")
    return EXIT_OK


def _load_disclosure_dir(path):
    path = Path(path)
    manifest = _read_json(path / "manifest.json")
    return DisclosureBundle(
        proof=_read_json(path / "proof.json"),
        signals=_read_json(path / "signals.json"),
        template_id=manifest.get("template_id"),
        circuit_digest=manifest.get("circuit_digest"),
        rendering=manifest.get("rendering"),
    )


def _load_trusted(args):
    trusted = {}
    for i, path in enumerate(args.trust or []):
        label = Path(path).stem if Path(path).stem else f"key-{i}"
        trusted[label] = load_public_key(path)
    return trusted


def cmd_verify(args):
    try:
        disclosure = _load_disclosure_dir(args.infile)
        template = _resolve_template(args, disclosure.template_id)
        vk = groth16.load_verifying_key(args.vk)
        trusted = _load_trusted(args)
    except _USAGE_ERRORS:
        raise
    except (ArtifactError, ZkTaxError, ValueError, TypeError, KeyError) as exc:
        # unreadable artifacts are a reject, not a crash (verify is total)
        print(f"rejected: MALFORMED ({exc})", file=sys.stderr)
        return EXIT_REJECT
    report = services.verify_bundle(disclosure, vk, trusted, template)
    print(json.dumps(report.to_json_obj(), indent=2))
    if report.accepted:
        if report.insecure_setup:
            print("warning: parameters come from a local dev-insecure setup",
                  file=sys.stderr)
        return EXIT_OK
    print(f"rejected: {report.reason} ({report.detail})", file=sys.stderr)
    return EXIT_REJECT


def cmd_inspect(args):
    path = Path(args.infile)
    print("=== UNVERIFIED — contents displayed without any proof "
          "or signature check ===")
    if path.is_dir():
        obj = {
            "manifest": _read_json(path / "manifest.json"),
            "proof": _read_json(path / "proof.json"),
            "signals": _read_json(path / "signals.json"),
        }
        n_sig = len(obj["signals"])
        obj["signals"] = {
            "count": n_sig,
            "buffer_preview": "".join(
                chr(int(s)) if 32 <= int(s) < 127 else "."
                for s in obj["signals"][:120]),
        }
    else:
        obj = _read_json(path)
    print(json.dumps(obj, indent=2))
    print("=== UNVERIFIED ===")
    return EXIT_OK


def cmd_serve_tts(args):
    key = load_secret_key(args.key)
    templates = _builtin_templates()
    if args.template:
        tpl = load_template_file(args.template)
        templates[tpl.template_id] = tpl
    app = services.create_tts_app(key, templates, label=args.label)
    services.run_app(app, args.port, host=args.host)
    return EXIT_OK


def cmd_serve_verify(args):
    vk = groth16.load_verifying_key(args.vk)
    templates = _builtin_templates()
    if args.template:
        tpl = load_template_file(args.template)
        templates[tpl.template_id] = tpl
    app = services.create_verify_app(vk, _load_trusted(args), templates)
    services.run_app(app, args.port, host=args.host)
    return EXIT_OK


def cmd_serve_local(args):
    bundle = SignedDocumentBundle.from_json_obj(_read_json(args.bundle))
    template = _resolve_template(args, bundle.template_id)
    proving_key = groth16.load_proving_key(args.pk)
    app = services.create_local_app(bundle, template, proving_key,
                                    static_dir=args.static)
    services.run_app(app, args.port)  # loopback only
    return EXIT_OK

# -------------------------------------------------------------- parser ---


def build_parser():
    p = argparse.ArgumentParser(
        prog="zktax",
        description="Sign, selectively redact, prove, and verify tax "
                    "documents with zk-SNARKs.")
    sub = p.add_subparsers(dest="command", required=True)

    def tpl_flag(sp, required=False):
        sp.add_argument("--template", required=required,
                        help="template descriptor JSON file")

    sp = sub.add_parser("keygen", help="generate a TTS signing keypair")
    sp.add_argument("--out", required=True, help="secret key output path")
    sp.add_argument("--pub", help="public key output path (default: OUT.pub)")
    sp.add_argument("--seed", help="32-byte hex seed for deterministic keys")
    sp.set_defaults(func=cmd_keygen)

    sp = sub.add_parser("setup", help="one-time local Groth16 setup "
                                      "(dev-insecure)")
    tpl_flag(sp)
    sp.add_argument("--template-id", help="built-in template id, e.g. 1040-2020")
    sp.add_argument("--artifacts", help=f"output dir (or ${ARTIFACT_DIR_ENV})")
    sp.add_argument("--entropy", help="hex entropy (>=32 bytes) for "
                                      "reproducible parameters")
    sp.set_defaults(func=cmd_setup)

    sp = sub.add_parser("sign", help="TTS: sign a tax document")
    sp.add_argument("--in", dest="infile", required=True,
                    help="document values JSON")
    tpl_flag(sp, required=True)
    sp.add_argument("--key", required=True, help="TTS secret key file")
    sp.add_argument("--out", required=True, help="signed bundle output path")
    sp.set_defaults(func=cmd_sign)

    sp = sub.add_parser("redact-prove",
                        help="produce a disclosure (proof + redacted signals)")
    sp.add_argument("--bundle", required=True, help="signed bundle JSON")
    tpl_flag(sp)
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--redact", help="comma-separated fields to redact")
    group.add_argument("--redact-all-except",
                       help="comma-separated fields to keep visible")
    sp.add_argument("--pk", required=True, help="proving key file")
    sp.add_argument("--out", required=True, help="disclosure output directory")
    sp.set_defaults(func=cmd_redact_prove)

    sp = sub.add_parser("verify", help="verify a disclosure directory")
    sp.add_argument("--in", dest="infile", required=True,
                    help="disclosure directory")
    sp.add_argument("--vk", required=True, help="verification_key.json")
    sp.add_argument("--trust", action="append", required=True,
                    help="trusted TTS public key file (repeatable)")
    tpl_flag(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("inspect",
                        help="pretty-print a bundle or disclosure "
                             "WITHOUT verifying")
    sp.add_argument("--in", dest="infile", required=True)
    sp.set_defaults(func=cmd_inspect)

    sp = sub.add_parser("serve-tts", help="run the TTS signing service")
    sp.add_argument("--key", required=True)
    tpl_flag(sp)
    sp.add_argument("--label", default="tts")
    sp.add_argument("--port", type=int, default=8470)
    sp.add_argument("--host", default="127.0.0.1")
    sp.set_defaults(func=cmd_serve_tts)

    sp = sub.add_parser("serve-verify", help="run the Verify service")
    sp.add_argument("--vk", required=True)
    sp.add_argument("--trust", action="append", required=True)
    tpl_flag(sp)
    sp.add_argument("--port", type=int, default=8471)
    sp.add_argument("--host", default="127.0.0.1")
    sp.set_defaults(func=cmd_serve_verify)

    sp = sub.add_parser("serve-local",
                        help="run the loopback Redact & Prove facade")
    sp.add_argument("--bundle", required=True)
    sp.add_argument("--pk", required=True)
    tpl_flag(sp)
    sp.add_argument("--static", help="directory of UI assets to serve")
    sp.add_argument("--port", type=int, default=8472)
    sp.set_defaults(func=cmd_serve_local)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except _USAGE_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ZkTaxError as exc:
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except KeyboardInterrupt:
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
