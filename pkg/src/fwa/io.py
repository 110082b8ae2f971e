"""Automaton documents (JSON) and result documents.

Errors are split by exit code: :class:`DocumentError` (1) for malformed
input, :class:`SemanticError` (2) for well-formed input that does not make
sense (unknown states or features, weight payloads of the wrong kind).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

import jsonschema

from .automata import FeaturedWeightedAutomaton
from .energy import ENERGY, update_needs_raise
from .features import FeatureModel, GuardSyntaxError, UnknownFeatureError, parse_guard, render_guard
from .gplift import GuardedValue
from .kleene import BOOL, FUZZ, TROP, parse_rational, render_rational

SEMIRINGS = {"bool": BOOL, "tropical": TROP, "fuzzy": FUZZ, "energy": ENERGY}


class DocumentError(Exception):
    exit_code = 1


class SemanticError(Exception):
    exit_code = 2


SCHEMA = {
    "type": "object",
    "required": ["features", "semiring", "states", "initial", "accepting", "transitions"],
    "additionalProperties": False,
    "properties": {
        "features": {"type": "array", "items": {"type": "string"}},
        "products": {
            "oneOf": [
                {"const": "all"},
                {"type": "array", "items": {"type": "array", "items": {"type": "string"}}},
            ]
        },
        "semiring": {"enum": list(SEMIRINGS)},
        "states": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        "initial": {"type": "array", "items": {"type": "string"}},
        "accepting": {"type": "array", "items": {"type": "string"}},
        "transitions": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["from", "to", "weight"],
                "additionalProperties": False,
                "properties": {
                    "from": {"type": "string"},
                    "to": {"type": "string"},
                    "guard": {"type": "string"},
                    "weight": {},
                },
            },
        },
    },
}


@dataclass
class AutomatonDocument:
    features: list
    semiring: str
    states: list
    initial: list
    accepting: list
    transitions: list  # dicts with from, to, guard, weight (raw payload)
    products: Any = "all"


def load_json(text: str) -> AutomatonDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"invalid JSON: {e}") from None
    return parse_document(raw)


def load_file(path: str) -> AutomatonDocument:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise DocumentError(f"cannot read {path}: {e.strerror}") from None
    return load_json(text)


def parse_document(raw) -> AutomatonDocument:
    try:
        jsonschema.validate(raw, SCHEMA)
    except jsonschema.ValidationError as e:
        where = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise DocumentError(f"schema error at {where}: {e.message}") from None
    transitions = [
        {"from": t["from"], "to": t["to"], "guard": t.get("guard", "true"), "weight": t["weight"]}
        for t in raw["transitions"]
    ]
    return AutomatonDocument(
        features=list(raw["features"]),
        semiring=raw["semiring"],
        states=list(raw["states"]),
        initial=list(raw["initial"]),
        accepting=list(raw["accepting"]),
        transitions=transitions,
        products=raw.get("products", "all"),
    )


def render_document(doc: AutomatonDocument) -> dict:
    return {
        "features": list(doc.features),
        "products": doc.products if doc.products == "all" else [list(p) for p in doc.products],
        "semiring": doc.semiring,
        "states": list(doc.states),
        "initial": list(doc.initial),
        "accepting": list(doc.accepting),
        "transitions": [dict(t) for t in doc.transitions],
    }


@dataclass
class Built:
    automaton: FeaturedWeightedAutomaton
    notes: list  # energy normalization notes
    warnings: list  # never-enabled transitions


def build(doc: AutomatonDocument) -> Built:
    """Resolve a document into a featured automaton."""
    try:
        model = FeatureModel(doc.features, doc.products)
    except (ValueError, TypeError) as e:
        raise SemanticError(str(e)) from None
    alg = SEMIRINGS[doc.semiring]
    known = set(doc.states)
    if len(known) != len(doc.states):
        raise SemanticError("duplicate state names")
    for role in ("initial", "accepting"):
        for s in getattr(doc, role):
            if s not in known:
                raise SemanticError(f"{role} state {s!r} is not declared")
    guarded, notes, warnings = [], [], []
    for i, t in enumerate(doc.transitions):
        where = f"transition {i} ({t['from']} -> {t['to']})"
        for end in ("from", "to"):
            if t[end] not in known:
                raise SemanticError(f"{where}: unknown state {t[end]!r}")
        try:
            g = parse_guard(t["guard"], model)
        except GuardSyntaxError as e:
            raise DocumentError(f"{where}: {e}") from None
        except UnknownFeatureError as e:
            raise SemanticError(f"{where}: {e}") from None
        try:
            w = alg.parse(t["weight"])
        except (ValueError, KeyError, TypeError, ZeroDivisionError) as e:
            raise SemanticError(f"{where}: bad {doc.semiring} weight: {e}") from None
        if alg is ENERGY:
            notes.extend(f"{where}: {n}" for n in _energy_notes(t["weight"]))
        if model.mask(g) == 0:
            warnings.append(f"{where}: guard {t['guard']!r} is never enabled")
        guarded.append((t["from"], g, w, t["to"]))
    F = FeaturedWeightedAutomaton.from_guarded(model, alg, doc.states, doc.initial, doc.accepting, guarded)
    return Built(F, notes, warnings)


def _energy_notes(payload) -> list:
    if payload.get("kind") != "update":
        return []
    lb, delta = parse_rational(payload["lb"]), parse_rational(payload["delta"])
    out = []
    if lb < 0:
        out.append(f"negative lower bound {render_rational(lb)} clipped to 0")
    if update_needs_raise(lb, delta):
        out.append(f"lower bound raised to {render_rational(-delta)} (l + delta < 0)")
    return out


def parse_product(text: str, model: FeatureModel) -> frozenset:
    """``"a,b"`` -> product; raises :class:`SemanticError` if not in the model."""
    names = [s.strip() for s in text.split(",") if s.strip()]
    try:
        model.index(names)
    except (ValueError, UnknownFeatureError) as e:
        raise SemanticError(str(e)) from None
    return frozenset(names)


def render_product(model: FeatureModel, product) -> list:
    return [f for f in model.features if f in product]


def result_document(
    query: str, semiring: str, value: GuardedValue, render, per_product: bool = False
) -> dict:
    """Symbolic table (and optionally the per-product expansion) of ``value``."""
    model = value.model
    doc = {
        "query": query,
        "semiring": semiring,
        "symbolic": [{"guard": render_guard(model.describe(m)), "value": render(v)} for _, m, v in value.blocks],
    }
    if per_product:
        doc["per_product"] = [
            {"product": render_product(model, model.product_of(i)), "value": render(value.at(i))}
            for i in range(len(model))
        ]
    return doc


def format_table(doc: dict) -> str:
    lines = []
    rows = [(r["guard"], r["value"]) for r in doc["symbolic"]]
    width = max(len(g) for g, _ in rows)
    lines.extend(f"{g.ljust(width)}  ->  {v}" for g, v in rows)
    if "per_product" in doc:
        lines.append("")
        prows = [("{" + ",".join(r["product"]) + "}", r["value"]) for r in doc["per_product"]]
        width = max(len(p) for p, _ in prows)
        lines.extend(f"{p.ljust(width)}  ->  {v}" for p, v in prows)
    return "\n".join(lines)
