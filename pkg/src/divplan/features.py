"""Feature configuration files: which behaviour dimensions to use, and the
side information (resources, fluent ranges, utilities) they need."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

import jsonschema

KINDS = ("cost_bound", "resource_utilisation", "goal_order", "utility_value", "numeric_fluent")

_RATIONAL = {"anyOf": [{"type": "number"}, {"type": "string", "pattern": r"^\s*-?\d+(\.\d+)?(\s*/\s*\d+)?\s*$"}]}

FEATURE_CONFIG_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "FeatureConfig",
    "type": "object",
    "properties": {
        "dimensions": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["kind"],
                "properties": {
                    "kind": {"enum": list(KINDS)},
                    "resources": {"type": "array", "items": {"type": "string"}},
                    "fluent": {"type": "string"},
                    "min": _RATIONAL,
                    "max": _RATIONAL,
                    "epsilon": _RATIONAL,
                    "utilities": {"type": "object", "additionalProperties": _RATIONAL},
                },
                "allOf": [
                    {
                        "if": {"properties": {"kind": {"const": "resource_utilisation"}}},
                        "then": {"required": ["resources"]},
                    },
                    {
                        "if": {"properties": {"kind": {"const": "numeric_fluent"}}},
                        "then": {"required": ["fluent", "min", "max", "epsilon"]},
                    },
                ],
                "additionalProperties": False,
            },
        },
        "quality_q": _RATIONAL,
        "cost_bound": {"type": "integer", "minimum": 0},
        "soft_goals": {"type": "boolean"},
        "utilities": {"type": "object", "additionalProperties": _RATIONAL},
        "k": {"type": "integer", "minimum": 1},
    },
    "not": {"required": ["quality_q", "cost_bound"]},
    "additionalProperties": False,
}


class FeatureConfigError(ValueError):
    pass


def _rational(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x.replace(" ", ""))
    return Fraction(str(x)) if isinstance(x, float) else Fraction(x)


@dataclass(frozen=True)
class DimensionSpec:
    """One configured dimension, with its side information."""

    kind: str
    resources: tuple[str, ...] = ()
    fluent: str | None = None
    min: Fraction | None = None
    max: Fraction | None = None
    epsilon: Fraction | None = None
    utilities: dict[str, Fraction] = field(default_factory=dict)

    @property
    def box_count(self) -> int:
        # top box is closed at max
        return math.ceil((self.max - self.min) / self.epsilon)

    def to_json(self) -> dict:
        d: dict = {"kind": self.kind}
        if self.kind == "resource_utilisation":
            d["resources"] = list(self.resources)
        if self.kind == "numeric_fluent":
            d.update(fluent=self.fluent, min=str(self.min), max=str(self.max), epsilon=str(self.epsilon))
        if self.utilities:
            d["utilities"] = {k: str(v) for k, v in self.utilities.items()}
        return d


@dataclass(frozen=True)
class FeatureConfig:
    dimensions: tuple[DimensionSpec, ...] = ()
    quality_q: Fraction | None = None
    cost_bound: int | None = None
    soft_goals: bool = False
    k: int | None = None
    utilities: dict[str, Fraction] = field(default_factory=dict)

    def utility_table(self) -> dict[str, Fraction]:
        """Utilities from the top level merged with any utility dimension's own table."""
        table = dict(self.utilities)
        for d in self.dimensions:
            table.update(d.utilities)
        return table

    def to_json(self) -> dict:
        d: dict = {"dimensions": [x.to_json() for x in self.dimensions]}
        if self.quality_q is not None:
            d["quality_q"] = str(self.quality_q)
        if self.cost_bound is not None:
            d["cost_bound"] = self.cost_bound
        d["soft_goals"] = self.soft_goals
        if self.k is not None:
            d["k"] = self.k
        if self.utilities:
            d["utilities"] = {k: str(v) for k, v in self.utilities.items()}
        return d


def feature_config_from_dict(data: dict) -> FeatureConfig:
    try:
        jsonschema.validate(data, FEATURE_CONFIG_SCHEMA)
    except jsonschema.ValidationError as e:
        raise FeatureConfigError(f"schema violation: {e.message}") from None
    dims = []
    for raw in data.get("dimensions", []):
        kind = raw["kind"]
        utils = {k: _rational(v) for k, v in raw.get("utilities", {}).items()}
        if any(v < 0 for v in utils.values()):
            raise FeatureConfigError("utilities must be >= 0")
        spec = DimensionSpec(kind=kind, resources=tuple(raw.get("resources", ())), utilities=utils)
        if kind == "numeric_fluent":
            lo, hi, eps = _rational(raw["min"]), _rational(raw["max"]), _rational(raw["epsilon"])
            if eps <= 0:
                raise FeatureConfigError(f"epsilon must be > 0 for fluent {raw['fluent']}")
            if lo >= hi:
                raise FeatureConfigError(f"min must be < max for fluent {raw['fluent']}")
            spec = DimensionSpec(kind=kind, fluent=raw["fluent"], min=lo, max=hi, epsilon=eps)
        if kind == "resource_utilisation" and len(set(spec.resources)) != len(spec.resources):
            raise FeatureConfigError("duplicate resource names")
        dims.append(spec)
    kinds = [d.kind for d in dims]
    for kind in set(kinds):
        if kind != "numeric_fluent" and kinds.count(kind) > 1:
            raise FeatureConfigError(f"dimension kind {kind!r} repeated")
    q = _rational(data["quality_q"]) if "quality_q" in data else None
    if q is not None and q <= 0:
        raise FeatureConfigError("quality_q must be > 0")
    top_utils = {k: _rational(v) for k, v in data.get("utilities", {}).items()}
    if any(v < 0 for v in top_utils.values()):
        raise FeatureConfigError("utilities must be >= 0")
    return FeatureConfig(
        dimensions=tuple(dims),
        quality_q=q,
        cost_bound=data.get("cost_bound"),
        soft_goals=data.get("soft_goals", False),
        k=data.get("k"),
        utilities=top_utils,
    )


def parse_addinfo(text: str) -> FeatureConfig:
    """Parse a JSON feature configuration; dimension order is kept as written."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FeatureConfigError(f"invalid JSON: {e}") from None
    return feature_config_from_dict(data)
