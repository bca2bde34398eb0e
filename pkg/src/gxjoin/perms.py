"""Permutations of a finite point set and fully materialized permutation groups.

Permutations act on the right (``point^g``); the product ``g * h`` means
"apply g, then h".  Groups are stored as explicit element sets built by
closure, which keeps every orbit/transitivity/regularity question a direct
finite check at the scales this package targets.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .config import DEFAULT_CAPS
from .errors import ClosureCapExceeded, OrderCapExceeded
from .groups import FiniteGroup


@dataclass(frozen=True, order=True)
class Perm:
    """A permutation stored as its image tuple: point p maps to image[p]."""

    image: tuple[int, ...]

    def __post_init__(self):
        n = len(self.image)
        if frozenset(self.image) != frozenset(range(n)):
            raise ValueError("image is not a permutation of 0..n-1")

    @staticmethod
    def identity(degree: int) -> "Perm":
        return Perm(tuple(range(degree)))

    @property
    def degree(self) -> int:
        return len(self.image)

    def __call__(self, p: int) -> int:
        return self.image[p]

    def __mul__(self, other: "Perm") -> "Perm":
        # apply self, then other
        oth = other.image
        return Perm(tuple(oth[v] for v in self.image))

    def inverse(self) -> "Perm":
        inv = [0] * len(self.image)
        for p, q in enumerate(self.image):
            inv[q] = p
        return Perm(tuple(inv))

    def is_identity(self) -> bool:
        return all(p == q for p, q in enumerate(self.image))

    def order(self) -> int:
        k, acc = 1, self
        while not acc.is_identity():
            acc = acc * self
            k += 1
        return k

    def cycles(self) -> list[tuple[int, ...]]:
        seen, out = set(), []
        for p in range(len(self.image)):
            if p in seen or self.image[p] == p:
                seen.add(p)
                continue
            cyc = [p]
            q = self.image[p]
            while q != p:
                cyc.append(q)
                seen.add(q)
                q = self.image[q]
            seen.add(p)
            out.append(tuple(cyc))
        return out

    def cycle_string(self) -> str:
        cycs = self.cycles()
        if not cycs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycs)

    def to_json(self) -> str:
        return json.dumps(list(self.image))

    @staticmethod
    def from_json(text: str) -> "Perm":
        return Perm(tuple(int(x) for x in json.loads(text)))


class PermGroup:
    """A permutation group with all elements materialized."""

    def __init__(self, degree: int, elements: Iterable[Perm],
                 generators: Sequence[Perm] = ()):
        self.degree = degree
        elems = frozenset(elements)
        for p in elems:
            if p.degree != degree:
                raise ValueError(f"element degree {p.degree} != {degree}")
        if Perm.identity(degree) not in elems:
            raise ValueError("element set lacks the identity")
        self.elements = elems
        self.generators = tuple(generators) if generators else tuple(sorted(elems))
        for g in self.generators:
            if g not in elems:
                raise ValueError("generator outside the element set")

    @property
    def order(self) -> int:
        return len(self.elements)

    def element_list(self) -> list[Perm]:
        return sorted(self.elements)

    def __contains__(self, p: Perm) -> bool:
        return p in self.elements

    def __iter__(self):
        return iter(self.element_list())

    def is_closed(self) -> bool:
        return all(a * b in self.elements for a in self.elements for b in self.elements)

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order})"


def closure(degree: int, gens: Sequence[Perm], cap: Optional[int] = None) -> PermGroup:
    """All products of the generators (breadth-first closure from the identity)."""
    cap = DEFAULT_CAPS.closure if cap is None else cap
    gen_list = sorted(set(gens))
    ident = Perm.identity(degree)
    elems = {ident}
    frontier = [ident]
    while frontier:
        fresh = []
        for a in frontier:
            for g in gen_list:
                c = a * g
                if c not in elems:
                    if len(elems) >= cap:
                        raise ClosureCapExceeded(
                            f"closure exceeded cap {cap} on degree {degree}")
                    elems.add(c)
                    fresh.append(c)
        frontier = fresh
    return PermGroup(degree, elems, gen_list)


def orbit(point: int, gens: Iterable[Perm]) -> frozenset[int]:
    """Orbit of a point under the group generated by ``gens``."""
    gen_list = list(gens)
    seen = {point}
    frontier = [point]
    while frontier:
        fresh = []
        for p in frontier:
            for g in gen_list:
                q = g(p)
                if q not in seen:
                    seen.add(q)
                    fresh.append(q)
        frontier = fresh
    return frozenset(seen)


def is_transitive(G: PermGroup) -> bool:
    return len(orbit(0, G.generators)) == G.degree


def is_regular(G: PermGroup) -> bool:
    """Transitive with |G| equal to the degree (equivalently, free)."""
    if not is_transitive(G):
        return False
    if G.order != G.degree:
        return False
    # defensive: only the identity may fix a point
    assert sum(1 for g in G.elements if g(0) == 0) == 1
    return True


@dataclass(frozen=True)
class PartitionOfPoints:
    """A partition of 0..degree-1 into disjoint non-empty blocks."""

    degree: int
    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for b in self.blocks:
            if not b:
                raise ValueError("empty block")
            if b & seen:
                raise ValueError("blocks are not disjoint")
            seen |= b
        if seen != set(range(self.degree)):
            raise ValueError("blocks do not cover all points")

    def block_of(self, p: int) -> frozenset[int]:
        for b in self.blocks:
            if p in b:
                return b
        raise KeyError(p)


def is_block_system(G: PermGroup, P: PartitionOfPoints) -> bool:
    """True iff every generator maps each block onto a block."""
    if P.degree != G.degree:
        raise ValueError("partition degree mismatch")
    block_set = set(P.blocks)
    for g in G.generators:
        for b in P.blocks:
            if frozenset(g(p) for p in b) not in block_set:
                return False
    return True


def right_regular_action(G: FiniteGroup) -> PermGroup:
    """The group G acting on itself by right multiplication."""
    perms = [Perm(tuple(G.table[p][g] for p in G.elements())) for g in G.elements()]
    gens = [perms[g] for g in find_generators(G)] or [Perm.identity(G.order)]
    return PermGroup(G.order, perms, gens)


def permgroup_as_table(P: PermGroup) -> tuple[FiniteGroup, list[Perm]]:
    """The abstract multiplication table of a permutation group.

    Elements are indexed by the sorted element list; names are cycle strings.
    """
    elems = P.element_list()
    index = {p: i for i, p in enumerate(elems)}
    names = [p.cycle_string() for p in elems]
    table = [[index[a * b] for b in elems] for a in elems]
    return FiniteGroup(names, table, cap=max(DEFAULT_CAPS.group_order, len(elems))), elems


def find_generators(G: FiniteGroup) -> list[int]:
    """A small generating set, chosen greedily in index order."""
    from .groups import subgroup_generated

    gens: list[int] = []
    span = subgroup_generated(G, gens)
    for g in G.elements():
        if g not in span.members:
            gens.append(g)
            span = subgroup_generated(G, gens)
            if span.order == G.order:
                break
    return gens


GroupLike = Union[FiniteGroup, PermGroup]


def _as_table(G: GroupLike) -> FiniteGroup:
    if isinstance(G, PermGroup):
        return permgroup_as_table(G)[0]
    return G


def group_isomorphic(G: GroupLike, H: GroupLike,
                     cap: Optional[int] = None) -> Optional[list[int]]:
    """An isomorphism witness G -> H as an image list, or None.

    Backtracks over generator images ordered by element order; every witness
    is exhaustively verified multiplicative before being returned.  For
    PermGroup inputs, indices refer to the sorted element list.
    """
    cap = DEFAULT_CAPS.group_order if cap is None else cap
    A, B = _as_table(G), _as_table(H)
    if A.order > cap or B.order > cap:
        raise OrderCapExceeded(f"isomorphism search capped at order {cap}")
    if A.order != B.order:
        return None
    if sorted(A.element_order(x) for x in A.elements()) != \
            sorted(B.element_order(x) for x in B.elements()):
        return None
    gens = find_generators(A)
    by_order: dict[int, list[int]] = {}
    for y in B.elements():
        by_order.setdefault(B.element_order(y), []).append(y)

    from .groups import _close_partial_hom

    def extend(k: int, gen_images: dict[int, int]) -> Optional[list[int]]:
        known, conflict = _close_partial_hom(A, B, gen_images)
        if conflict is not None:
            return None
        if len(set(known.values())) != len(known):
            return None
        if k == len(gens):
            if len(known) != A.order:
                return None
            images = [known[i] for i in A.elements()]
            ok = all(images[A.mul(a, b)] == B.mul(images[a], images[b])
                     for a in A.elements() for b in A.elements())
            return images if ok else None
        g = gens[k]
        for y in by_order.get(A.element_order(g), []):
            if g in known and known[g] != y:
                continue
            result = extend(k + 1, {**gen_images, g: y})
            if result is not None:
                return result
        return None

    return extend(0, {})
