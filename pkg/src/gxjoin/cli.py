"""Batch front door: scenario ingestion, pipeline commands, exports.

Commands: build, synth, verify, aut, export.  Exit codes:
  0  success
  2  theorem-mode hypothesis failure
  3  validation error (malformed scenario, broken invariant)
  4  search exhaustion / synthesis failure
  5  a size cap was exceeded

All output is deterministic: search orders are lexicographic, JSON is
sorted, DOT/edge lists are sorted by label.  Report JSON carries a
``timing_ms`` field that is excluded from the determinism contract.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence, Union

from .config import Caps, DEFAULT_CAPS, caps_from_env, merge_caps
from .errors import (
    ClosureCapExceeded,
    GxjoinError,
    OrderCapExceeded,
    ScenarioError,
    SizeCapExceeded,
    SynthesisFailed,
    TheoremChoicesUnavailable,
)
from .graphs import Graph, automorphism_group, cayley_graph, is_vertex_transitive
from .groups import group_from_spec
from .gwp import gwp_group
from .perms import orbit
from .synth import (
    CayleyScenario,
    build_w,
    certify_vertex_transitive,
    find_aut_violation,
    synthesize_cayley,
)
from .xjoin import XJoinBlock, XJoinInput, generalized_xjoin

EXIT_OK = 0
EXIT_HYPOTHESIS = 2
EXIT_VALIDATION = 3
EXIT_SYNTHESIS = 4
EXIT_CAP = 5

_CAYLEY_KEYS = {"kind", "base_group", "base_connection", "subgroup_generators",
                "fiber_group", "fiber_connection", "theta", "mode",
                "collapse_allowed", "caps", "budget"}
_XJOIN_KEYS = {"kind", "graph", "blocks", "collapse_allowed", "caps"}
_BLOCK_KEYS = {"label", "vertices", "fiber", "lambda"}


class LoadedScenario:
    def __init__(self, kind: str, payload: Union[CayleyScenario, XJoinInput],
                 caps: Caps, budget: Optional[int]):
        self.kind = kind
        self.payload = payload
        self.caps = caps
        self.budget = budget


def _require_keys(doc: dict, allowed: set[str], what: str) -> None:
    if not isinstance(doc, dict):
        raise ScenarioError(f"{what} must be a JSON object")
    extra = set(doc) - allowed
    if extra:
        raise ScenarioError(f"unknown keys in {what}: {sorted(extra)}")


def _scenario_caps(doc: dict, base: Caps) -> Caps:
    overrides = doc.get("caps", {})
    if not isinstance(overrides, dict):
        raise ScenarioError("'caps' must be an object")
    return merge_caps(base, overrides)


def load_scenario(path: str, base_caps: Caps = DEFAULT_CAPS) -> LoadedScenario:
    """Parse and validate a scenario file; unknown keys are rejected."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ScenarioError(f"cannot read scenario: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario is not valid JSON: {exc}") from None
    if not isinstance(doc, dict) or "kind" not in doc:
        raise ScenarioError("scenario must be an object with a 'kind' key")
    kind = doc["kind"]
    if kind == "cayley_scenario":
        _require_keys(doc, _CAYLEY_KEYS, "cayley scenario")
        caps = _scenario_caps(doc, base_caps)
        for key in ("base_group", "base_connection", "subgroup_generators",
                    "fiber_group", "fiber_connection", "theta"):
            if key not in doc:
                raise ScenarioError(f"cayley scenario is missing {key!r}")
        A = group_from_spec(doc["base_group"], cap=caps.group_order)
        C = group_from_spec(doc["fiber_group"], cap=caps.group_order)
        if not isinstance(doc["theta"], dict):
            raise ScenarioError("'theta' must map fiber element names to base names")
        sc = CayleyScenario(
            A=A,
            base_connection=frozenset(A.index(n) for n in doc["base_connection"]),
            H_gens=tuple(A.index(n) for n in doc["subgroup_generators"]),
            C=C,
            fiber_connection=frozenset(C.index(n) for n in doc["fiber_connection"]),
            theta_gen_images={C.index(k): A.index(v)
                              for k, v in doc["theta"].items()},
            mode=doc.get("mode", "search"),
            collapse_allowed=bool(doc.get("collapse_allowed", True)),
        )
        budget = doc.get("budget")
        if budget is not None and (not isinstance(budget, int) or budget < 0):
            raise ScenarioError("'budget' must be a non-negative integer")
        return LoadedScenario("cayley_scenario", sc, caps, budget)
    if kind == "xjoin":
        _require_keys(doc, _XJOIN_KEYS, "xjoin scenario")
        caps = _scenario_caps(doc, base_caps)
        if "graph" not in doc or "blocks" not in doc:
            raise ScenarioError("xjoin scenario needs 'graph' and 'blocks'")
        base = Graph.from_json(doc["graph"])
        if not isinstance(doc["blocks"], list) or not doc["blocks"]:
            raise ScenarioError("'blocks' must be a non-empty list")
        blocks = []
        for i, bdoc in enumerate(doc["blocks"]):
            _require_keys(bdoc, _BLOCK_KEYS, f"block {i}")
            for key in ("label", "vertices", "fiber", "lambda"):
                if key not in bdoc:
                    raise ScenarioError(f"block {i} is missing {key!r}")
            fiber = Graph.from_json(bdoc["fiber"])
            if not isinstance(bdoc["lambda"], dict):
                raise ScenarioError(f"block {i}: 'lambda' must be an object")
            lam = [None] * fiber.n
            for fl, bl in bdoc["lambda"].items():
                lam[fiber.index(fl)] = base.index(bl)
            if any(v is None for v in lam):
                raise ScenarioError(f"block {i}: 'lambda' is not total on the fiber")
            blocks.append(XJoinBlock(
                label=str(bdoc["label"]),
                base_vertices=tuple(base.index(n) for n in bdoc["vertices"]),
                fiber=fiber,
                fiber_to_base=tuple(lam)))
        inp = XJoinInput(base, tuple(blocks),
                         collapse_allowed=bool(doc.get("collapse_allowed", True)))
        return LoadedScenario("xjoin", inp, caps, None)
    raise ScenarioError(f"unknown scenario kind {kind!r}")


def _write_output(text: str, path: Optional[str]) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _render_graph(W: Graph, fmt: str) -> str:
    if fmt == "dot":
        return W.to_dot()
    if fmt == "edgelist":
        return W.to_edgelist_text()
    return json.dumps(W.to_json(), indent=2, sort_keys=True) + "\n"


def cmd_build(args) -> int:
    loaded = load_scenario(args.scenario, caps_from_env())
    if loaded.kind == "cayley_scenario":
        W, s = build_w(loaded.payload)
        fibers = [(s.F.names[rep], cayley_graph(loaded.payload.C,
                                                loaded.payload.fiber_connection))
                  for rep in s.reps]
    else:
        W = generalized_xjoin(loaded.payload)
        fibers = [(b.label, b.fiber) for b in loaded.payload.blocks]
    _write_output(_render_graph(W, args.out), args.output)
    if args.fibers_dir:
        os.makedirs(args.fibers_dir, exist_ok=True)
        for label, fiber in fibers:
            out = os.path.join(args.fibers_dir, f"{label}.json")
            with open(out, "w", encoding="utf-8") as fh:
                json.dump(fiber.to_json(), fh, indent=2, sort_keys=True)
                fh.write("\n")
    return EXIT_OK


def cmd_synth(args) -> int:
    loaded = load_scenario(args.scenario, caps_from_env())
    if loaded.kind != "cayley_scenario":
        raise ScenarioError("synth requires a cayley_scenario file")
    sc = loaded.payload
    if args.mode:
        sc.mode = args.mode
    budget = loaded.budget if loaded.budget is not None else loaded.caps.lift_budget
    cert = synthesize_cayley(sc, budget=budget)
    text = json.dumps(cert.report(), indent=2, sort_keys=True) + "\n"
    _write_output(text, args.report)
    return EXIT_OK


def cmd_verify(args) -> int:
    loaded = load_scenario(args.scenario, caps_from_env())
    caps = loaded.caps
    lines: list[str] = []
    failed = False
    if loaded.kind == "cayley_scenario":
        W, s = build_w(loaded.payload)
        lines.append(f"build                ok ({W.n} vertices, {len(W.edges)} edges)")
        violation = find_aut_violation(W, s)
        if violation is None:
            lines.append("aut_containment      PASS")
        else:
            label, edge = violation
            lines.append(f"aut_containment      FAIL ({label} breaks edge {edge})")
            failed = True
        if certify_vertex_transitive(W, s):
            lines.append("vertex_transitive    PASS")
        else:
            lines.append("vertex_transitive    FAIL")
            failed = True
        if W.n <= caps.aut_vertices:
            aut = automorphism_group(W, cap=caps.aut_vertices,
                                     element_cap=caps.closure)
            lines.append(f"aut_order            {aut.order}")
            try:
                full = gwp_group(s, cap=caps.closure)
                contained = all(p in aut.elements for p in full.elements)
                lines.append(f"full_group_in_aut    {'PASS' if contained else 'FAIL'}"
                             f" (order {full.order})")
                failed = failed or not contained
            except ClosureCapExceeded:
                lines.append("full_group_in_aut    SKIP (closure cap exceeded)")
        else:
            lines.append(f"aut_order            SKIP (cap aut_vertices="
                         f"{caps.aut_vertices} exceeded: {W.n} vertices)")
    else:
        inp = loaded.payload
        W = generalized_xjoin(inp)
        lines.append(f"build                ok ({W.n} vertices, {len(W.edges)} edges)")
        lines.append("projections          PASS")
        if W.n <= caps.aut_vertices:
            vt = is_vertex_transitive(W, cap=caps.aut_vertices)
            lines.append(f"vertex_transitive    {str(vt).lower()} (informational)")
        else:
            lines.append(f"vertex_transitive    SKIP (cap aut_vertices="
                         f"{caps.aut_vertices} exceeded: {W.n} vertices)")
    print("\n".join(lines))
    return EXIT_VALIDATION if failed else EXIT_OK


def cmd_aut(args) -> int:
    caps = caps_from_env()
    try:
        with open(args.graph, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ScenarioError(f"cannot read graph: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"graph is not valid JSON: {exc}") from None
    G = Graph.from_json(doc)
    aut = automorphism_group(G, cap=caps.aut_vertices, element_cap=caps.closure)
    report = {
        "order": aut.order,
        "vertex_transitive": len(orbit(0, aut.generators)) == G.n if G.n else True,
        "elements": [list(p.image) for p in aut.element_list()],
    }
    print(json.dumps(report, indent=2, sort_keys=True))
    return EXIT_OK


def cmd_export(args) -> int:
    try:
        with open(args.graph, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ScenarioError(f"cannot read graph: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"graph is not valid JSON: {exc}") from None
    G = Graph.from_json(doc)
    _write_output(_render_graph(G, args.format), args.output)
    return EXIT_OK


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gxjoin",
        description="Generalized X-joins of Cayley graphs: build, verify, synthesize.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_build = sub.add_parser("build", help="build the join graph from a scenario")
    p_build.add_argument("scenario")
    p_build.add_argument("--out", choices=("dot", "edgelist", "json"), default="json")
    p_build.add_argument("--output", default="-", help="output path, '-' for stdout")
    p_build.add_argument("--fibers-dir", default=None,
                         help="also write each fiber graph as JSON into this directory")
    p_build.set_defaults(func=cmd_build)

    p_synth = sub.add_parser("synth", help="synthesize a Cayley certificate")
    p_synth.add_argument("scenario")
    p_synth.add_argument("--mode", choices=("theorem", "search", "canonical"),
                         default=None, help="override the scenario's mode")
    p_synth.add_argument("--report", default="-", help="certificate path, '-' for stdout")
    p_synth.set_defaults(func=cmd_synth)

    p_verify = sub.add_parser("verify", help="run the verification checks")
    p_verify.add_argument("scenario")
    p_verify.set_defaults(func=cmd_verify)

    p_aut = sub.add_parser("aut", help="automorphism group of a graph JSON file")
    p_aut.add_argument("graph")
    p_aut.set_defaults(func=cmd_aut)

    p_export = sub.add_parser("export", help="convert a graph JSON file")
    p_export.add_argument("graph")
    p_export.add_argument("--format", choices=("dot", "edgelist", "json"),
                          default="dot")
    p_export.add_argument("--output", default="-")
    p_export.set_defaults(func=cmd_export)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except TheoremChoicesUnavailable as exc:
        print(f"error: theorem hypotheses unavailable: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except SynthesisFailed as exc:
        print(f"error: synthesis failed: {exc}", file=sys.stderr)
        return EXIT_SYNTHESIS
    except (OrderCapExceeded, ClosureCapExceeded, SizeCapExceeded) as exc:
        print(f"error: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (GxjoinError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    raise SystemExit(main())
