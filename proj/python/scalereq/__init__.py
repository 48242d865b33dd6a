"""Python bindings for the scalability requirements engine.

Models are passed as JSON text or as already-decoded dicts.
"""

import json

from . import _core
from ._core import (
    EvaluationError,
    FormulaError,
    ModelSyntaxError,
    SchemaError,
    ScalereqError,
    burstiness_from_active_hours,
    burstiness_from_series,
    canonical_formula,
    format_fixed,
)

__all__ = [
    "EvaluationError",
    "FormulaError",
    "ModelSyntaxError",
    "SchemaError",
    "ScalereqError",
    "burstiness_from_active_hours",
    "burstiness_from_series",
    "canonical_formula",
    "checklist",
    "compose",
    "dependency_order",
    "evaluate",
    "format_fixed",
    "formula_references",
    "load_model",
    "normalize_model",
    "render_report",
    "risk",
    "triage",
    "validate",
]


def _text(model):
    return model if isinstance(model, str) else json.dumps(model)


def load_model(path):
    """Reads a model file and returns it as a dict, after strict parsing."""
    with open(path, encoding="utf-8") as f:
        return json.loads(_core.normalize_model(f.read()))


def normalize_model(model):
    return json.loads(_core.normalize_model(_text(model)))


def validate(model):
    return json.loads(_core.validate(_text(model)))


def evaluate(model, scenario=None):
    return json.loads(_core.evaluate(_text(model), scenario))


def dependency_order(model):
    return _core.dependency_order(_text(model))


def triage(model):
    return json.loads(_core.triage(_text(model)))


def checklist(model):
    return json.loads(_core.checklist(_text(model)))


def risk(model):
    return json.loads(_core.risk(_text(model)))


def render_report(model, format="md"):
    return _core.render_report(_text(model), format)


def compose(components):
    """components: iterable of (timescale, ratio) pairs or bare ratios."""
    pairs = [c if isinstance(c, (tuple, list)) else ("", c) for c in components]
    return _core.compose([(str(t), float(r)) for t, r in pairs])


def formula_references(text):
    return set(_core.formula_references(text))
