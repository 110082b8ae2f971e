"""Featured weighted automata: values of whole product families at once."""

from .automata import (
    FeaturedWeightedAutomaton,
    WeightedAutomaton,
    buchi_value,
    energy_queries,
    featured_buchi_value,
    featured_reach_value,
    per_product_oracle,
    project,
    reach_value,
)
from .energy import ENERGY, EnergyFunction, OmegaIndicator, update
from .features import FeatureModel, parse_guard
from .fwalgo import featured_floyd_warshall
from .gplift import GuardedValue, canonicalize, lift_algebra
from .kleene import BOOL, FUZZ, INF, TROP

__version__ = "0.1.0"

__all__ = [
    "BOOL",
    "ENERGY",
    "FUZZ",
    "INF",
    "TROP",
    "EnergyFunction",
    "FeatureModel",
    "FeaturedWeightedAutomaton",
    "GuardedValue",
    "OmegaIndicator",
    "WeightedAutomaton",
    "buchi_value",
    "canonicalize",
    "energy_queries",
    "featured_buchi_value",
    "featured_floyd_warshall",
    "featured_reach_value",
    "lift_algebra",
    "parse_guard",
    "per_product_oracle",
    "project",
    "reach_value",
    "update",
]
