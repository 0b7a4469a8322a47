"""Form templates, canonical serialization, and redaction masks.

A template fixes the field order; a document is serialized as a flat
JSON object `{"k1":"v1",...}` with no whitespace, in template order,
padded with 0x00 to the template's buffer length. Redaction masks select
value characters only, so a masked buffer still parses as JSON with the
same keys.
"""

import json
from dataclasses import dataclass, field

from .errors import BufferError_, DocumentError, MaskError, TemplateError

REDACTION_BYTE = 0x20

KIND_TEXT = "text"
KIND_NUMERIC = "numeric"

# Printable ASCII, minus the double quote (would need escaping) and the
# backslash (raw backslash is an invalid JSON escape).
_FORBIDDEN_VALUE_CHARS = {'"', "\\"}


@dataclass(frozen=True)
class TemplateField:
    key: str
    label: str
    kind: str


@dataclass(frozen=True)
class FormTemplate:
    form_id: str
    year: str
    fields: tuple  # of TemplateField, order is canonical
    max_buffer_len: int

    @property
    def template_id(self) -> str:
        return f"{self.form_id}-{self.year}"

    def keys(self):
        return [f.key for f in self.fields]

    def field_map(self):
        return {f.key: f for f in self.fields}


@dataclass(frozen=True)
class TaxDocument:
    template_id: str
    values: dict  # key -> ASCII string value, insertion order = template order


@dataclass(frozen=True)
class AsciiBuffer:
    data: bytes  # length == template.max_buffer_len
    used_len: int

    def __post_init__(self):
        if self.used_len > len(self.data):
            raise BufferError_("used_len exceeds buffer length")
        if any(b != 0 for b in self.data[self.used_len:]):
            raise BufferError_("nonzero pad byte")
        if any(b >= 128 for b in self.data):
            raise BufferError_("non-ASCII byte in buffer")


@dataclass(frozen=True)
class RedactionMask:
    bits: tuple  # of 0/1, length N

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise MaskError("mask bits must be 0 or 1")

    def popcount(self) -> int:
        return sum(self.bits)


def _check_ascii_key(key: str):
    if not key:
        raise TemplateError("empty field key")
    if not key.isascii():
        raise TemplateError(f"non-ASCII field key: {key!r}")


def load_template(descriptor) -> FormTemplate:
    """Build a template from a parsed descriptor dict or a JSON string."""
    if isinstance(descriptor, (str, bytes)):
        try:
            descriptor = json.loads(descriptor)
        except json.JSONDecodeError as exc:
            raise TemplateError(f"descriptor is not valid JSON: {exc}") from exc
    if not isinstance(descriptor, dict):
        raise TemplateError("descriptor must be a JSON object")
    try:
        form_id = descriptor["form"]
        year = descriptor["year"]
        max_len = descriptor["max_buffer_len"]
        raw_fields = descriptor["fields"]
    except KeyError as exc:
        raise TemplateError(f"descriptor missing key {exc}") from exc
    if not isinstance(max_len, int) or max_len <= 0:
        raise TemplateError("max_buffer_len must be a positive integer")
    fields = []
    seen = set()
    for entry in raw_fields:
        key = entry["key"]
        _check_ascii_key(key)
        if key in seen:
            raise TemplateError(f"duplicate field key: {key!r}")
        seen.add(key)
        kind = entry.get("kind", KIND_TEXT)
        if kind not in (KIND_TEXT, KIND_NUMERIC):
            raise TemplateError(f"unknown field kind: {kind!r}")
        fields.append(TemplateField(key, entry.get("label", key), kind))
    return FormTemplate(str(form_id), str(year), tuple(fields), max_len)


def load_template_file(path) -> FormTemplate:
    with open(path) as fh:
        return load_template(fh.read())


def _check_value(key: str, value: str, kind: str):
    if not isinstance(value, str):
        raise DocumentError(f"value for {key!r} must be a string")
    for ch in value:
        if not (0x20 <= ord(ch) <= 0x7E) or ch in _FORBIDDEN_VALUE_CHARS:
            raise DocumentError(
                f"value for {key!r} contains forbidden character {ch!r}")
    if kind == KIND_NUMERIC:
        if not value or any(ch not in "0123456789," for ch in value):
            raise DocumentError(
                f"numeric field {key!r} must contain only digits and commas")


def validate_document(doc: TaxDocument, template: FormTemplate):
    fmap = template.field_map()
    for key, value in doc.values.items():
        if key not in fmap:
            raise DocumentError(f"unknown field key: {key!r}")
        _check_value(key, value, fmap[key].kind)


def make_document(template: FormTemplate, values: dict) -> TaxDocument:
    """Document with values reordered into template order, validated."""
    order = {k: i for i, k in enumerate(template.keys())}
    for key in values:
        if key not in order:
            raise DocumentError(f"unknown field key: {key!r}")
    ordered = dict(sorted(values.items(), key=lambda kv: order[kv[0]]))
    doc = TaxDocument(template.template_id, ordered)
    validate_document(doc, template)
    return doc


def _serialize(doc: TaxDocument, template: FormTemplate) -> str:
    keys = [k for k in template.keys() if k in doc.values]
    parts = [f'"{k}":"{doc.values[k]}"' for k in keys]
    return "{" + ",".join(parts) + "}"


def canonicalize(doc: TaxDocument, template: FormTemplate) -> AsciiBuffer:
    """Deterministic fixed-length encoding; the circuit's input layout."""
    validate_document(doc, template)
    text = _serialize(doc, template)
    raw = text.encode("ascii")
    n = template.max_buffer_len
    if len(raw) > n:
        raise BufferError_(
            f"serialized document is {len(raw)} bytes, exceeds buffer size {n}")
    return AsciiBuffer(raw + b"\x00" * (n - len(raw)), len(raw))


def value_layout(doc: TaxDocument, template: FormTemplate) -> dict:
    """Byte range (start, end) of each value in the canonical buffer.

    Ranges cover the characters between (not including) the value's
    quotes.
    """
    layout = {}
    pos = 1  # past '{'
    keys = [k for k in template.keys() if k in doc.values]
    for i, key in enumerate(keys):
        pos += len(key) + 2 + 1 + 1  # "key" : "
        vlen = len(doc.values[key])
        layout[key] = (pos, pos + vlen)
        pos += vlen + 1  # closing quote
        if i < len(keys) - 1:
            pos += 1  # comma
    return layout


def parse_buffer(buf: AsciiBuffer, template: FormTemplate) -> TaxDocument:
    """Inverse of canonicalize; tolerates redaction whitespace in values."""
    try:
        text = buf.data[:buf.used_len].decode("ascii")
    except UnicodeDecodeError as exc:
        raise BufferError_(f"buffer is not ASCII: {exc}") from exc
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BufferError_(f"buffer region is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise BufferError_("buffer does not hold a JSON object")
    fmap = template.field_map()
    for key, value in obj.items():
        if key not in fmap:
            raise BufferError_(f"unknown key in buffer: {key!r}")
        if not isinstance(value, str):
            raise BufferError_(f"non-string value for key {key!r}")
    return TaxDocument(template.template_id, dict(obj))


def buffer_from_bytes(data: bytes, n: int) -> AsciiBuffer:
    """Wrap raw bytes (padded or exact) into an AsciiBuffer of size n."""
    if len(data) > n:
        raise BufferError_("data longer than buffer size")
    data = bytes(data) + b"\x00" * (n - len(data))
    used = len(data)
    while used > 0 and data[used - 1] == 0:
        used -= 1
    return AsciiBuffer(data, used)


def fields_to_mask(doc: TaxDocument, redact_keys, template: FormTemplate) -> RedactionMask:
    """Mask whose 1-bits cover exactly the value bytes of redact_keys."""
    redact_keys = set(redact_keys)
    unknown = redact_keys - set(doc.values)
    if unknown:
        raise MaskError(f"unknown redact keys: {sorted(unknown)}")
    layout = value_layout(doc, template)
    bits = [0] * template.max_buffer_len
    for key in redact_keys:
        start, end = layout[key]
        for i in range(start, end):
            bits[i] = 1
    return RedactionMask(tuple(bits))


def apply_mask_plain(buf: AsciiBuffer, mask: RedactionMask) -> AsciiBuffer:
    """Reference redaction oracle: masked bytes become 0x20."""
    if len(mask.bits) != len(buf.data):
        raise MaskError("mask length does not match buffer length")
    out = bytearray(buf.data)
    for i, bit in enumerate(mask.bits):
        if bit:
            out[i] = REDACTION_BYTE
    return AsciiBuffer(bytes(out), buf.used_len)
