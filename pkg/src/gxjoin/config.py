"""Size caps and search budgets.

Every potentially explosive computation (table validation, permutation
closure, graph isomorphism backtracking, lift search) is bounded by a cap
from this module.  The defaults keep worst cases interactive; callers can
override per call, and the CLI honours the ``XJOIN_CAPS`` environment
variable plus per-scenario overrides.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

from .errors import ScenarioError


@dataclass(frozen=True)
class Caps:
    group_order: int = 512      # max order of a FiniteGroup (O(n^3) axiom check)
    closure: int = 20000        # max elements materialized by permutation closure
    iso_vertices: int = 64      # max vertices for graph isomorphism search
    aut_vertices: int = 24      # max vertices for full automorphism enumeration
    lift_budget: int = 100000   # max candidate evaluations in lift_search


DEFAULT_CAPS = Caps()

ENV_VAR = "XJOIN_CAPS"

_FIELD_NAMES = tuple(f.name for f in fields(Caps))


def merge_caps(base: Caps, overrides: dict) -> Caps:
    """Return ``base`` with the given fields replaced; unknown keys are errors."""
    for key, value in overrides.items():
        if key not in _FIELD_NAMES:
            raise ScenarioError(f"unknown cap {key!r} (known: {', '.join(_FIELD_NAMES)})")
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise ScenarioError(f"cap {key!r} must be a non-negative integer, got {value!r}")
    return replace(base, **overrides)


def caps_from_env(base: Caps = DEFAULT_CAPS, environ=None) -> Caps:
    """Apply ``XJOIN_CAPS=name=value,name=value`` overrides from the environment."""
    environ = os.environ if environ is None else environ
    raw = environ.get(ENV_VAR, "").strip()
    if not raw:
        return base
    overrides = {}
    for item in raw.split(","):
        item = item.strip()
        if not item:
            continue
        name, sep, value = item.partition("=")
        if not sep:
            raise ScenarioError(f"malformed {ENV_VAR} entry {item!r}, expected name=value")
        try:
            overrides[name.strip()] = int(value)
        except ValueError:
            raise ScenarioError(f"malformed {ENV_VAR} value in {item!r}") from None
    return merge_caps(base, overrides)
