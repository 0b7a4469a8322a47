import json
import string

import pytest
from hypothesis import given, settings, strategies as st

from conftest import small_template
from oracles import redact_oracle
from zktax.errors import BufferError_, DocumentError, MaskError
from zktax.forms import (apply_mask_plain, buffer_from_bytes, canonicalize,
                         fields_to_mask, make_document, parse_buffer,
                         validate_document, value_layout)

TEXT_ALPHABET = string.ascii_letters + string.digits + " .,-'"


def doc_strategy(template):
    text_keys = [f.key for f in template.fields if f.kind == "text"]
    num_keys = [f.key for f in template.fields if f.kind == "numeric"]

    def build(draw_map):
        return make_document(template, draw_map)

    text_vals = st.text(alphabet=TEXT_ALPHABET, min_size=1, max_size=8)
    num_vals = st.integers(min_value=0, max_value=999999).map(
        lambda v: f"{v:,}")
    return st.builds(
        build,
        st.fixed_dictionaries(
            {},
            optional={**{k: text_vals for k in text_keys[:4]},
                      **{k: num_vals for k in num_keys[:6]}}))


TPL = small_template(310)


def test_canonical_form_of_fixture(template_1040, sample_doc):
    buf = canonicalize(sample_doc, template_1040)
    text = buf.data[:buf.used_len].decode()
    assert text.startswith('{"fname":"Jane"')
    assert " " not in text.replace('" "', "")  # no structural whitespace
    assert json.loads(text) == dict(sample_doc.values)
    assert buf.data[buf.used_len:] == b"\x00" * (1500 - buf.used_len)
    # keys appear in template order
    keys = list(json.loads(text))
    order = [f.key for f in template_1040.fields]
    assert keys == [k for k in order if k in keys]


def test_canonicalize_deterministic(template_1040, sample_doc):
    a = canonicalize(sample_doc, template_1040)
    b = canonicalize(sample_doc, template_1040)
    assert a.data == b.data


@settings(max_examples=50, deadline=None)
@given(doc_strategy(TPL))
def test_roundtrip_parse(doc):
    buf = canonicalize(doc, TPL)
    assert parse_buffer(buf, TPL).values == doc.values


@settings(max_examples=30, deadline=None)
@given(doc_strategy(TPL), st.randoms(use_true_random=False))
def test_mask_covers_exactly_value_bytes(doc, rnd):
    keys = sorted(doc.values)
    redact = set(rnd.sample(keys, rnd.randrange(len(keys) + 1)))
    mask = fields_to_mask(doc, redact, TPL)
    layout = value_layout(doc, TPL)
    expect = [0] * TPL.max_buffer_len
    for key in redact:
        start, end = layout[key]
        for i in range(start, end):
            expect[i] = 1
    assert list(mask.bits) == expect
    buf = canonicalize(doc, TPL)
    # mask bits only cover value characters, never structure
    for i, bit in enumerate(mask.bits):
        if bit:
            assert buf.data[i] not in b'{}"'


@settings(max_examples=30, deadline=None)
@given(doc_strategy(TPL), st.randoms(use_true_random=False))
def test_apply_mask_matches_oracle_and_reparses(doc, rnd):
    keys = sorted(doc.values)
    redact = set(rnd.sample(keys, rnd.randrange(len(keys) + 1)))
    mask = fields_to_mask(doc, redact, TPL)
    buf = canonicalize(doc, TPL)
    out = apply_mask_plain(buf, mask)
    assert out.data == redact_oracle(buf.data, mask.bits)
    parsed = parse_buffer(out, TPL)
    for key, val in doc.values.items():
        if key in redact:
            assert set(parsed.values[key]) <= {" "}
            assert len(parsed.values[key]) == len(val)
        else:
            assert parsed.values[key] == val


def test_layout_values(template_1040, sample_doc):
    layout = value_layout(sample_doc, template_1040)
    buf = canonicalize(sample_doc, template_1040)
    for key, (start, end) in layout.items():
        assert buf.data[start:end].decode() == sample_doc.values[key]
        assert buf.data[start - 1:start] == b'"'
        assert buf.data[end:end + 1] == b'"'


def test_validation_rejections(template_1040, sample_doc):
    with pytest.raises(DocumentError):
        make_document(template_1040, {"f_999": "1"})
    with pytest.raises(DocumentError):
        make_document(template_1040, {"fname": 'Ja"ne'})
    with pytest.raises(DocumentError):
        make_document(template_1040, {"fname": "Ja\\ne"})
    with pytest.raises(DocumentError):
        make_document(template_1040, {"f_1": "12a3"})  # numeric kind
    validate_document(sample_doc, template_1040)


def test_buffer_overflow(sample_doc):
    tiny = small_template(16)
    with pytest.raises(BufferError_):
        canonicalize(sample_doc, tiny)


def test_example_redaction_by_hand():
    # {"a":"xy"} with the two value bytes masked -> {"a":"  "}
    data = b'{"fname":"xy"}'
    buf = buffer_from_bytes(data, 20)
    bits = [0] * 20
    bits[10] = bits[11] = 1
    from zktax.forms import RedactionMask
    out = apply_mask_plain(buf, RedactionMask(tuple(bits)))
    assert out.data[:buf.used_len] == b'{"fname":"  "}'


def test_mask_errors(sample_doc, template_1040):
    with pytest.raises(MaskError):
        fields_to_mask(sample_doc, {"nope"}, template_1040)
