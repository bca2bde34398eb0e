"""The generalized X-join: gluing fiber graphs over the blocks of a base graph.

Each block X of a partition of the base vertex set carries a fiber graph and
a projection map onto the induced subgraph on X.  The result keeps every
fiber as an induced subgraph and joins fibers over cross-block base edges by
complete bipartite bundles between the projection preimages.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GxjoinError, LambdaNotEpimorphism, SigmaNotPartition
from .graphs import Graph, VertexMap, induced_subgraph, is_graph_epimorphism
from .perms import PartitionOfPoints


@dataclass(frozen=True)
class XJoinBlock:
    """One block: its base vertices, a fiber graph, and the projection map.

    ``fiber_to_base[i]`` is the base-graph vertex that fiber vertex i
    projects to; it must land inside ``base_vertices``.
    """

    label: str
    base_vertices: tuple[int, ...]
    fiber: Graph
    fiber_to_base: tuple[int, ...]


@dataclass(frozen=True)
class XJoinInput:
    base: Graph
    blocks: tuple[XJoinBlock, ...]
    collapse_allowed: bool = True

    def validate(self) -> None:
        labels = [b.label for b in self.blocks]
        if len(set(labels)) != len(labels):
            raise SigmaNotPartition("block labels are not unique")
        seen: set[int] = set()
        for b in self.blocks:
            verts = set(b.base_vertices)
            if len(verts) != len(b.base_vertices):
                raise SigmaNotPartition(f"block {b.label!r} repeats a vertex")
            if not verts:
                raise SigmaNotPartition(f"block {b.label!r} is empty")
            if verts & seen:
                raise SigmaNotPartition(f"block {b.label!r} overlaps another block")
            if not verts <= set(range(self.base.n)):
                raise SigmaNotPartition(f"block {b.label!r} references missing vertices")
            seen |= verts
        if seen != set(range(self.base.n)):
            raise SigmaNotPartition("blocks do not cover the base vertex set")
        for b in self.blocks:
            if len(b.fiber_to_base) != b.fiber.n:
                raise LambdaNotEpimorphism(
                    f"block {b.label!r}: projection is not total on the fiber")
            if not set(b.fiber_to_base) <= set(b.base_vertices):
                raise LambdaNotEpimorphism(
                    f"block {b.label!r}: projection leaves the block")
            target = induced_subgraph(self.base, b.base_vertices)
            order = sorted(b.base_vertices)
            local = {v: i for i, v in enumerate(order)}
            vm = VertexMap(b.fiber, target,
                           tuple(local[v] for v in b.fiber_to_base))
            if not is_graph_epimorphism(vm, collapse_allowed=self.collapse_allowed):
                raise LambdaNotEpimorphism(
                    f"block {b.label!r}: projection is not a graph epimorphism "
                    f"onto the induced subgraph")


def generalized_xjoin(inp: XJoinInput) -> Graph:
    """Build the X-join; vertex labels are "blockLabel:fiberLabel".

    Edges: fiber edges within each block, plus all pairs (y, y') from
    different blocks whose projections are adjacent in the base graph.
    """
    inp.validate()
    labels: list[str] = []
    offsets: list[int] = []
    for b in inp.blocks:
        offsets.append(len(labels))
        labels.extend(f"{b.label}:{name}" for name in b.fiber.labels)
    edges: list[tuple[int, int]] = []
    for bi, b in enumerate(inp.blocks):
        off = offsets[bi]
        edges.extend((off + u, off + v) for u, v in b.fiber.edges)
    for bi in range(len(inp.blocks)):
        for bj in range(bi + 1, len(inp.blocks)):
            A, B = inp.blocks[bi], inp.blocks[bj]
            offA, offB = offsets[bi], offsets[bj]
            for u in range(A.fiber.n):
                xu = A.fiber_to_base[u]
                for v in range(B.fiber.n):
                    if inp.base.has_edge(xu, B.fiber_to_base[v]):
                        edges.append((offA + u, offB + v))
    return Graph(labels, edges)


def result_partition(inp: XJoinInput) -> PartitionOfPoints:
    """The partition of the join's vertices into per-block fiber copies."""
    blocks: list[frozenset[int]] = []
    off = 0
    for b in inp.blocks:
        blocks.append(frozenset(range(off, off + b.fiber.n)))
        off += b.fiber.n
    return PartitionOfPoints(off, tuple(blocks))


def lexicographic_product(G: Graph, H: Graph) -> Graph:
    """G with every vertex blown up into a copy of H (singleton-block X-join).

    Computed both via the join construction and directly from the definition;
    the two edge sets are cross-checked.
    """
    blocks = tuple(
        XJoinBlock(label=G.labels[x], base_vertices=(x,), fiber=H,
                   fiber_to_base=tuple(x for _ in range(H.n)))
        for x in range(G.n))
    W = generalized_xjoin(XJoinInput(G, blocks))
    direct_edges = set()
    for gx in range(G.n):
        for gy in range(G.n):
            for hx in range(H.n):
                for hy in range(H.n):
                    u, v = gx * H.n + hx, gy * H.n + hy
                    if u >= v:
                        continue
                    if G.has_edge(gx, gy) or (gx == gy and H.has_edge(hx, hy)):
                        direct_edges.add((u, v))
    if direct_edges != set(W.edges):
        raise GxjoinError("internal error: lexicographic product cross-check failed")
    return W


def is_equitable(W: Graph, P: PartitionOfPoints) -> bool:
    """True iff within each block, every vertex has the same number of
    neighbors in each (other or same) block."""
    if P.degree != W.n:
        raise ValueError("partition degree mismatch")
    for B in P.blocks:
        for C in P.blocks:
            counts = {len(W.adj[v] & C) for v in B}
            if len(counts) > 1:
                return False
    return True
