"""Bundled 2020 Form 1040 template and a filled sample document."""

import json
from importlib import resources

from .forms import FormTemplate, TaxDocument, load_template, make_document


def _read(name: str) -> str:
    return resources.files("zktax.data").joinpath(name).read_text()


def form_1040_2020() -> FormTemplate:
    return load_template(_read("form1040_2020.json"))


def sample_document(template: FormTemplate = None) -> TaxDocument:
    template = template or form_1040_2020()
    return make_document(template, json.loads(_read("sample_1040_2020.json")))
