"""Finite simple undirected graphs with stable vertex labels.

Includes Cayley graph construction, induced subgraphs, the epimorphism check
used by fiber projections, and exhaustive isomorphism/automorphism oracles
(backtracking with degree/color pruning, intended for desk-scale graphs).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .config import DEFAULT_CAPS
from .errors import (
    AsymmetricConnectionSet,
    ClosureCapExceeded,
    GxjoinError,
    IdentityInConnectionSet,
    ScenarioError,
    SizeCapExceeded,
)
from .groups import FiniteGroup
from .perms import Perm, PermGroup, orbit


class Graph:
    """An undirected graph on labelled vertices 0..n-1, no loops or multi-edges."""

    def __init__(self, labels: Sequence[str], edges: Iterable[tuple[int, int]]):
        self.labels = tuple(str(x) for x in labels)
        n = len(self.labels)
        if len(set(self.labels)) != n:
            raise ValueError("duplicate vertex labels")
        canon = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) references a missing vertex")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            canon.add((u, v) if u < v else (v, u))
        self.edges = frozenset(canon)
        adj = [set() for _ in range(n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        self.adj = tuple(frozenset(s) for s in adj)
        self._label_index = {name: i for i, name in enumerate(self.labels)}

    @property
    def n(self) -> int:
        return len(self.labels)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def index(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise ScenarioError(f"unknown vertex label {label!r}") from None

    def edge_labels(self) -> set[tuple[str, str]]:
        out = set()
        for u, v in self.edges:
            a, b = self.labels[u], self.labels[v]
            out.add((a, b) if a <= b else (b, a))
        return out

    # -- serialization --

    def to_json(self) -> dict:
        return {"vertices": list(self.labels),
                "edges": sorted([u, v] for u, v in self.edges)}

    @staticmethod
    def from_json(doc: dict) -> "Graph":
        if not isinstance(doc, dict):
            raise ScenarioError("graph JSON must be an object")
        extra = set(doc) - {"vertices", "edges"}
        if extra:
            raise ScenarioError(f"unknown keys in graph JSON: {sorted(extra)}")
        if "vertices" not in doc or "edges" not in doc:
            raise ScenarioError("graph JSON needs 'vertices' and 'edges'")
        try:
            return Graph(doc["vertices"], [tuple(e) for e in doc["edges"]])
        except (ValueError, TypeError) as exc:
            raise ScenarioError(f"bad graph JSON: {exc}") from None

    def to_dot(self, name: str = "g") -> str:
        lines = [f"graph {name} {{"]
        for label in sorted(self.labels):
            lines.append(f'  "{label}";')
        for a, b in sorted(self.edge_labels()):
            lines.append(f'  "{a}" -- "{b}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_edgelist_text(self) -> str:
        return "".join(f"{a} {b}\n" for a, b in sorted(self.edge_labels()))

    def __repr__(self):
        return f"Graph(n={self.n}, m={len(self.edges)})"


def empty_graph(n: int) -> Graph:
    return Graph([f"v{i}" for i in range(n)], [])


def path_graph(n: int) -> Graph:
    return Graph([f"v{i}" for i in range(n)], [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph([f"v{i}" for i in range(n)],
                 [(i, (i + 1) % n) for i in range(n)] if n >= 3 else
                 ([(0, 1)] if n == 2 else []))


def complete_graph(n: int) -> Graph:
    return Graph([f"v{i}" for i in range(n)],
                 [(i, j) for i in range(n) for j in range(i + 1, n)])


@dataclass(frozen=True)
class VertexMap:
    """A total map between the vertex sets of two graphs."""

    domain: Graph
    codomain: Graph
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.domain.n:
            raise ValueError("vertex map is not total on the domain")
        for v in self.images:
            if not 0 <= v < self.codomain.n:
                raise ValueError(f"image vertex {v} out of range")

    def __call__(self, v: int) -> int:
        return self.images[v]


def cayley_graph(A: FiniteGroup, connection: Iterable[int]) -> Graph:
    """Cay(A, S): vertices are group elements, (a, b) is an edge iff a*b^-1 in S."""
    S = frozenset(int(s) for s in connection)
    for s in S:
        if not 0 <= s < A.order:
            raise ScenarioError(f"connection element {s} out of range")
    if A.identity in S:
        raise IdentityInConnectionSet("the identity may not be a connection element")
    for s in S:
        if A.inv(s) not in S:
            raise AsymmetricConnectionSet(
                f"connection set lacks the inverse of {A.names[s]}")
    edges = [(a, b) for a in A.elements() for b in range(a + 1, A.order)
             if A.mul(a, A.inv(b)) in S]
    return Graph(A.names, edges)


def induced_subgraph(G: Graph, vertices: Iterable[int]) -> Graph:
    """The subgraph induced by a vertex subset, keeping the original labels."""
    verts = sorted(set(int(v) for v in vertices))
    local = {v: i for i, v in enumerate(verts)}
    edges = [(local[u], local[v]) for u, v in G.edges if u in local and v in local]
    return Graph([G.labels[v] for v in verts], edges)


def is_graph_epimorphism(f: VertexMap, collapse_allowed: bool = True) -> bool:
    """Vertex-surjective homomorphism that also covers every codomain edge.

    A domain edge whose endpoints map to the same vertex is allowed only when
    ``collapse_allowed`` is set (the codomain is treated as reflexive for that
    edge); with the flag off such an edge disqualifies the map.
    """
    dom, cod, im = f.domain, f.codomain, f.images
    if frozenset(im) != frozenset(range(cod.n)):
        return False
    covered = set()
    for u, v in dom.edges:
        a, b = im[u], im[v]
        if a == b:
            if not collapse_allowed:
                return False
            continue
        if not cod.has_edge(a, b):
            return False
        covered.add((a, b) if a < b else (b, a))
    return covered == set(cod.edges)


def is_automorphism(G: Graph, p: Perm) -> bool:
    if p.degree != G.n:
        return False
    return all(G.has_edge(p(u), p(v)) for u, v in G.edges)


# -- isomorphism machinery -----------------------------------------------------


def _joint_refine(G: Graph, H: Graph) -> tuple[list[int], list[int]]:
    """Iterated neighbor-color refinement with a palette shared by both graphs."""
    colG = [G.degree(v) for v in range(G.n)]
    colH = [H.degree(v) for v in range(H.n)]
    while True:
        sigG = [(colG[v], tuple(sorted(colG[u] for u in G.adj[v]))) for v in range(G.n)]
        sigH = [(colH[v], tuple(sorted(colH[u] for u in H.adj[v]))) for v in range(H.n)]
        palette = {sig: i for i, sig in enumerate(sorted(set(sigG) | set(sigH)))}
        newG = [palette[s] for s in sigG]
        newH = [palette[s] for s in sigH]
        if len(set(newG)) == len(set(colG)) and len(set(newH)) == len(set(colH)):
            return newG, newH
        colG, colH = newG, newH


def _placement_order(G: Graph) -> list[int]:
    """Vertices ordered so each one touches as many placed vertices as possible."""
    order: list[int] = []
    placed: set[int] = set()
    while len(order) < G.n:
        best, best_key = -1, (-1, 0)
        for v in range(G.n):
            if v in placed:
                continue
            key = (len(G.adj[v] & placed), -v)
            if key > best_key:
                best, best_key = v, key
        order.append(best)
        placed.add(best)
    return order


def _iso_search(G: Graph, H: Graph, find_all: bool,
                element_cap: Optional[int] = None) -> list[tuple[int, ...]]:
    if G.n != H.n or len(G.edges) != len(H.edges):
        return []
    colG, colH = _joint_refine(G, H)
    if sorted(colG) != sorted(colH):
        return []
    n = G.n
    order = _placement_order(G)
    img = [-1] * n
    used = [False] * n
    placed: list[int] = []
    results: list[tuple[int, ...]] = []

    def backtrack(k: int) -> bool:
        if k == n:
            results.append(tuple(img))
            if element_cap is not None and len(results) > element_cap:
                raise ClosureCapExceeded(
                    f"automorphism enumeration exceeded cap {element_cap}")
            return not find_all
        v = order[k]
        cv = colG[v]
        for w in range(n):
            if used[w] or colH[w] != cv:
                continue
            ok = True
            for u in placed:
                if G.has_edge(v, u) != H.has_edge(w, img[u]):
                    ok = False
                    break
            if not ok:
                continue
            img[v] = w
            used[w] = True
            placed.append(v)
            stop = backtrack(k + 1)
            placed.pop()
            used[w] = False
            img[v] = -1
            if stop:
                return True
        return False

    backtrack(0)
    return results


def graph_isomorphic(G: Graph, H: Graph,
                     cap: Optional[int] = None) -> Optional[VertexMap]:
    """An isomorphism witness G -> H, or None; verified edge-exactly."""
    cap = DEFAULT_CAPS.iso_vertices if cap is None else cap
    if max(G.n, H.n) > cap:
        raise SizeCapExceeded(f"isomorphism search capped at {cap} vertices")
    found = _iso_search(G, H, find_all=False)
    if not found:
        return None
    images = found[0]
    witness = VertexMap(G, H, images)
    mapped = {(min(images[u], images[v]), max(images[u], images[v]))
              for u, v in G.edges}
    if mapped != set(H.edges):
        raise GxjoinError("internal error: isomorphism witness failed verification")
    return witness


def automorphism_group(G: Graph, cap: Optional[int] = None,
                       element_cap: Optional[int] = None) -> PermGroup:
    """All adjacency-preserving permutations, materialized as a PermGroup."""
    cap = DEFAULT_CAPS.aut_vertices if cap is None else cap
    element_cap = DEFAULT_CAPS.closure if element_cap is None else element_cap
    if G.n > cap:
        raise SizeCapExceeded(f"automorphism oracle capped at {cap} vertices")
    perms = [Perm(images) for images in _iso_search(G, G, find_all=True,
                                                    element_cap=element_cap)]
    return PermGroup(G.n, perms)


def is_vertex_transitive(G: Graph, witness: Optional[PermGroup] = None,
                         cap: Optional[int] = None) -> bool:
    """Single vertex orbit under Aut(G), or under a supplied witness subgroup."""
    if G.n == 0:
        return True
    if witness is not None:
        for p in witness.generators:
            if not is_automorphism(G, p):
                raise GxjoinError("witness subgroup contains a non-automorphism")
        return len(orbit(0, witness.generators)) == G.n
    aut = automorphism_group(G, cap=cap)
    return len(orbit(0, aut.generators)) == G.n
