"""Finite groups as explicit multiplication tables.

Groups here are fully materialized: an n-by-n table of element indices, an
identity index, and an inverse table.  All group axioms (Latin square,
identity, inverses, associativity) are checked eagerly at construction, so
everything downstream can trust the tables.  The associativity check is
O(n^3), which the order cap keeps affordable.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence

from .config import DEFAULT_CAPS
from .errors import (
    GeneratorsInsufficient,
    InvalidReps,
    NotAHomomorphism,
    OrderCapExceeded,
    ScenarioError,
    TableNotGroup,
)


class FiniteGroup:
    """A finite group on elements 0..n-1 with a full multiplication table.

    ``table[a][b]`` is the index of the product a*b.  ``generators`` maps the
    presentation's generator names to element indices (empty for table input
    and products).  Instances are immutable by convention.
    """

    def __init__(self, names: Sequence[str], table: Sequence[Sequence[int]],
                 generators: Optional[Mapping[str, int]] = None,
                 cap: Optional[int] = None):
        cap = DEFAULT_CAPS.group_order if cap is None else cap
        self.names = tuple(str(x) for x in names)
        n = len(self.names)
        if n == 0:
            raise TableNotGroup("a group needs at least one element")
        if n > cap:
            raise OrderCapExceeded(f"order {n} exceeds cap {cap}")
        if len(set(self.names)) != n:
            raise TableNotGroup("element names are not unique")
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self._validate_table()
        self.generators = dict(generators or {})
        for gname, idx in self.generators.items():
            if not 0 <= idx < n:
                raise TableNotGroup(f"generator {gname!r} index {idx} out of range")
        self._index = {name: i for i, name in enumerate(self.names)}
        self._orders: Optional[tuple[int, ...]] = None

    # -- validation --

    def _validate_table(self):
        n = len(self.names)
        table = self.table
        if len(table) != n:
            raise TableNotGroup(f"table has {len(table)} rows, expected {n}")
        full = frozenset(range(n))
        for i, row in enumerate(table):
            if len(row) != n:
                raise TableNotGroup(f"row {i} has {len(row)} entries, expected {n}")
            if frozenset(row) != full:
                raise TableNotGroup(f"row {i} is not a permutation of 0..{n - 1}")
        for j in range(n):
            if frozenset(row[j] for row in table) != full:
                raise TableNotGroup(f"column {j} is not a permutation of 0..{n - 1}")
        identity = None
        idrow = tuple(range(n))
        for e in range(n):
            if table[e] == idrow and all(table[i][e] == i for i in range(n)):
                identity = e
                break
        if identity is None:
            raise TableNotGroup("no two-sided identity element")
        self.identity = identity
        inverses = []
        for i in range(n):
            j = table[i].index(identity)
            if table[j][i] != identity:
                raise TableNotGroup(f"element {i} has no two-sided inverse")
            inverses.append(j)
        self.inverses = tuple(inverses)
        # associativity: a*(b*c) == (a*b)*c for all triples, checked row-wise
        for a in range(n):
            row_a = table[a]
            for b in range(n):
                composed = tuple(row_a[v] for v in table[b])
                expected = table[row_a[b]]
                if composed != expected:
                    c = next(k for k in range(n) if composed[k] != expected[k])
                    raise TableNotGroup(
                        f"associativity fails at ({a},{b},{c}): "
                        f"{a}*({b}*{c})={composed[c]} but ({a}*{b})*{c}={expected[c]}")

    # -- basic queries --

    @property
    def order(self) -> int:
        return len(self.names)

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverses[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        acc = self.identity
        for _ in range(k):
            acc = self.table[acc][a]
        return acc

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ScenarioError(f"unknown element name {name!r}") from None

    def name(self, i: int) -> str:
        return self.names[i]

    def element_order(self, a: int) -> int:
        if self._orders is None:
            orders = []
            for x in self.elements():
                k, acc = 1, x
                while acc != self.identity:
                    acc = self.table[acc][x]
                    k += 1
                orders.append(k)
            self._orders = tuple(orders)
        return self._orders[a]

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in self.elements() for b in self.elements())

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


@dataclass(frozen=True)
class Subgroup:
    """A subgroup given by its member indices inside a parent group."""

    parent: FiniteGroup
    members: frozenset[int]

    def __post_init__(self):
        G = self.parent
        if G.identity not in self.members:
            raise TableNotGroup("subgroup does not contain the identity")
        for a in self.members:
            if not 0 <= a < G.order:
                raise TableNotGroup(f"subgroup member {a} out of range")
            if G.inv(a) not in self.members:
                raise TableNotGroup(f"subgroup not closed under inverse at {a}")
            for b in self.members:
                if G.mul(a, b) not in self.members:
                    raise TableNotGroup(f"subgroup not closed under product at ({a},{b})")

    @property
    def order(self) -> int:
        return len(self.members)

    def sorted_members(self) -> list[int]:
        return sorted(self.members)

    def as_group(self) -> tuple[FiniteGroup, tuple[int, ...]]:
        """Return the subgroup as a standalone group plus the local->parent index map."""
        glob = tuple(self.sorted_members())
        local = {g: i for i, g in enumerate(glob)}
        names = [self.parent.names[g] for g in glob]
        table = [[local[self.parent.mul(a, b)] for b in glob] for a in glob]
        return FiniteGroup(names, table), glob

    def __repr__(self):
        return f"Subgroup(order={self.order})"


# -- constructors -------------------------------------------------------------


def cyclic(n: int, cap: Optional[int] = None) -> FiniteGroup:
    """Cyclic group of order n with elements e, g, g2, ..."""
    if n < 1:
        raise ScenarioError(f"cyclic order must be >= 1, got {n}")
    names = ["e"] + ["g" if k == 1 else f"g{k}" for k in range(1, n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    gens = {"g": 1} if n > 1 else {}
    return FiniteGroup(names, table, gens, cap=cap)


def dihedral(order: int, cap: Optional[int] = None) -> FiniteGroup:
    """Dihedral group of the given (even) order, presented as
    <x, y | x^n = y^2 = 1, xy = yx^(n-1)> with n = order/2.

    Element x^i y^j has index i + n*j; names run e, x, x2, ..., y, xy, x2y, ...
    """
    if order < 2 or order % 2 != 0:
        raise ScenarioError(f"dihedral order must be even and >= 2, got {order}")
    n = order // 2

    def nm(i, j):
        rot = "" if i == 0 else ("x" if i == 1 else f"x{i}")
        ref = "y" if j else ""
        return (rot + ref) or "e"

    names = [nm(i, j) for j in (0, 1) for i in range(n)]
    table = []
    for j1 in (0, 1):
        for i1 in range(n):
            row = []
            for j2 in (0, 1):
                for i2 in range(n):
                    i = (i1 + (i2 if j1 == 0 else -i2)) % n
                    j = j1 ^ j2
                    row.append(i + n * j)
            table.append(row)
    return FiniteGroup(names, table, {"x": 1 % n, "y": n}, cap=cap)


# unit quaternion products: (axis, axis) -> (sign, axis) with axes 1, i, j, k
_QMUL = {
    (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
    (1, 0): (1, 1), (2, 0): (1, 2), (3, 0): (1, 3),
    (1, 1): (-1, 0), (2, 2): (-1, 0), (3, 3): (-1, 0),
    (1, 2): (1, 3), (2, 1): (-1, 3),
    (2, 3): (1, 1), (3, 2): (-1, 1),
    (3, 1): (1, 2), (1, 3): (-1, 2),
}


def quaternion8(cap: Optional[int] = None) -> FiniteGroup:
    """The quaternion group {±1, ±i, ±j, ±k} with i^2 = j^2 = k^2 = -1, ij = k."""
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]

    def mul(a, b):
        ax_a, neg_a = divmod(a, 2)
        ax_b, neg_b = divmod(b, 2)
        sign, axis = _QMUL[(ax_a, ax_b)]
        neg = (neg_a + neg_b + (1 if sign < 0 else 0)) % 2
        return axis * 2 + neg

    table = [[mul(a, b) for b in range(8)] for a in range(8)]
    return FiniteGroup(names, table, {"i": 2, "j": 4}, cap=cap)


def elementary_abelian(p: int, k: int, cap: Optional[int] = None) -> FiniteGroup:
    """(C_p)^k with generators named a, b, c, ... and product names like a2b."""
    if p < 2 or any(p % d == 0 for d in range(2, p)):
        raise ScenarioError(f"p must be prime, got {p}")
    if not 1 <= k <= 12:
        raise ScenarioError(f"k must be between 1 and 12, got {k}")
    n = p ** k
    letters = "abcdefghijkl"[:k]

    # exps_of(x)[d] is the exponent of generator d (most significant first)
    def exps_of(x):
        out = []
        for _ in range(k):
            x, r = divmod(x, p)
            out.append(r)
        out.reverse()
        return out

    def encode(exps):
        x = 0
        for e in exps:
            x = x * p + e
        return x

    names = []
    for x in range(n):
        exps = exps_of(x)
        parts = [letters[d] + ("" if e == 1 else str(e)) for d, e in enumerate(exps) if e]
        names.append("".join(parts) or "e")
    table = []
    for a in range(n):
        ea = exps_of(a)
        row = []
        for b in range(n):
            eb = exps_of(b)
            row.append(encode([(x + y) % p for x, y in zip(ea, eb)]))
        table.append(row)
    gens = {letters[d]: p ** (k - 1 - d) for d in range(k)}
    return FiniteGroup(names, table, gens, cap=cap)


def direct_product(*factors: FiniteGroup, cap: Optional[int] = None) -> FiniteGroup:
    """Direct product with mixed-radix element indices (first factor most significant)."""
    if not factors:
        raise ScenarioError("direct product needs at least one factor")
    if len(factors) == 1:
        return factors[0]
    orders = [g.order for g in factors]

    def decode(x):
        out = []
        for o in reversed(orders):
            x, r = divmod(x, o)
            out.append(r)
        out.reverse()
        return out

    def encode(parts):
        x = 0
        for part, o in zip(parts, orders):
            x = x * o + part
        return x

    n = 1
    for o in orders:
        n *= o
    names = []
    for x in range(n):
        parts = decode(x)
        names.append("(" + ",".join(g.names[i] for g, i in zip(factors, parts)) + ")")
    table = []
    for a in range(n):
        pa = decode(a)
        row = []
        for b in range(n):
            pb = decode(b)
            row.append(encode([g.mul(x, y) for g, x, y in zip(factors, pa, pb)]))
        table.append(row)
    return FiniteGroup(names, table, cap=cap)


_SPEC_KEYS = {
    "table": {"kind", "names", "table"},
    "cyclic": {"kind", "order"},
    "dihedral": {"kind", "order"},
    "quaternion8": {"kind"},
    "elementary_abelian": {"kind", "p", "k"},
    "product": {"kind", "factors"},
}


def group_from_spec(spec: dict, cap: Optional[int] = None) -> FiniteGroup:
    """Build a group from its JSON spec; unknown kinds or keys are rejected."""
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ScenarioError(f"group spec must be an object with a 'kind' key, got {spec!r}")
    kind = spec["kind"]
    if kind not in _SPEC_KEYS:
        raise ScenarioError(f"unknown group kind {kind!r}")
    extra = set(spec) - _SPEC_KEYS[kind]
    if extra:
        raise ScenarioError(f"unknown keys in {kind!r} group spec: {sorted(extra)}")
    if kind == "table":
        if "names" not in spec or "table" not in spec:
            raise ScenarioError("table group spec needs 'names' and 'table'")
        return FiniteGroup(spec["names"], spec["table"], cap=cap)
    if kind == "cyclic":
        return cyclic(int(spec.get("order", 0)), cap=cap)
    if kind == "dihedral":
        return dihedral(int(spec.get("order", 0)), cap=cap)
    if kind == "quaternion8":
        return quaternion8(cap=cap)
    if kind == "elementary_abelian":
        return elementary_abelian(int(spec.get("p", 0)), int(spec.get("k", 0)), cap=cap)
    factors = spec.get("factors")
    if not isinstance(factors, list) or not factors:
        raise ScenarioError("product group spec needs a non-empty 'factors' list")
    return direct_product(*(group_from_spec(f, cap=cap) for f in factors), cap=cap)


# -- subgroup machinery --------------------------------------------------------


def subgroup_generated(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing the given element indices."""
    members = {G.identity}
    frontier = [G.identity]
    gen_list = sorted(set(gens))
    for g in gen_list:
        if g not in members:
            members.add(g)
            frontier.append(g)
    while frontier:
        fresh = []
        for a in frontier:
            for g in gen_list:
                p = G.mul(a, g)
                if p not in members:
                    members.add(p)
                    fresh.append(p)
        frontier = fresh
    return Subgroup(G, frozenset(members))


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, frozenset({G.identity}))


def full_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, frozenset(G.elements()))


def centralizer(G: FiniteGroup, S: Subgroup) -> Subgroup:
    """Elements of G commuting with every member of S."""
    members = frozenset(
        g for g in G.elements()
        if all(G.mul(g, s) == G.mul(s, g) for s in S.members))
    return Subgroup(G, members)


def center(G: FiniteGroup) -> Subgroup:
    return centralizer(G, full_subgroup(G))


def right_coset_reps(G: FiniteGroup, H: Subgroup,
                     override: Optional[Sequence[int]] = None) -> list[int]:
    """One representative per right coset Hg, identity first.

    Without an override, the remaining representatives are the smallest
    element index in each coset.  An override list must start with the
    identity and hit each coset exactly once.
    """
    count = G.order // H.order
    if override is not None:
        reps = [int(r) for r in override]
        if len(reps) != count:
            raise InvalidReps(f"expected {count} representatives, got {len(reps)}")
        if reps[0] != G.identity:
            raise InvalidReps("the first representative must be the identity")
        seen = set()
        for r in reps:
            coset = frozenset(G.mul(h, r) for h in H.members)
            if coset in seen:
                raise InvalidReps(f"representative {r} repeats a coset")
            seen.add(coset)
        return reps
    reps = [G.identity]
    covered = set(H.members)
    for g in G.elements():
        if g not in covered:
            reps.append(g)
            covered.update(G.mul(h, g) for h in H.members)
    return reps


def right_coset_partition(G: FiniteGroup, H: Subgroup,
                          reps: Sequence[int]) -> list[frozenset[int]]:
    """Right cosets H*rep in representative order."""
    return [frozenset(G.mul(h, r) for h in H.members) for r in reps]


def direct_complement(G: FiniteGroup, H: Subgroup,
                      max_gens: int = 3) -> Optional[Subgroup]:
    """A subgroup F1 with H ∩ F1 = {e}, H·F1 = G, and [H, F1] = 1, if one exists.

    Searches subgroups generated by up to ``max_gens`` elements outside H in
    deterministic index order; returns the first hit, or None.  The generator
    bound is a documented limitation, not an error.
    """
    outside = sorted(set(G.elements()) - H.members)
    target = G.order // H.order
    h_members = H.members
    for size in range(0, max_gens + 1):
        for gens in combinations(outside, size):
            F1 = subgroup_generated(G, gens)
            if F1.order != target:
                continue
            if len(F1.members & h_members) != 1:
                continue
            if all(G.mul(h, f) == G.mul(f, h) for h in h_members for f in F1.members):
                return F1
    return None


# -- homomorphisms --------------------------------------------------------------


@dataclass(frozen=True)
class GroupHom:
    """A verified homomorphism, stored as the full image list."""

    domain: FiniteGroup
    codomain: FiniteGroup
    images: tuple[int, ...]
    surjective: bool

    def __call__(self, i: int) -> int:
        return self.images[i]

    def image_set(self) -> frozenset[int]:
        return frozenset(self.images)


def _close_partial_hom(dom: FiniteGroup, cod: FiniteGroup,
                       gen_images: Mapping[int, int]):
    """Extend generator images by multiplicative closure.

    Returns (known, None) where ``known`` maps each element of the generated
    subgroup to its image, or (None, (a, g)) naming the product whose two
    derivations disagree.
    """
    known = {dom.identity: cod.identity}
    gens = sorted(gen_images)
    for g in gens:
        img = gen_images[g]
        if g in known and known[g] != img:
            return None, (dom.identity, g)
        known[g] = img
    frontier = list(known)
    while frontier:
        fresh = []
        for a in frontier:
            for g in gens:
                p = dom.mul(a, g)
                q = cod.mul(known[a], known[g])
                if p in known:
                    if known[p] != q:
                        return None, (a, g)
                else:
                    known[p] = q
                    fresh.append(p)
        frontier = fresh
    return known, None


def hom_from_images(dom: FiniteGroup, cod: FiniteGroup,
                    gen_images: Mapping[int, int]) -> GroupHom:
    """The unique homomorphism extending ``gen_images``, built by closure.

    Raises NotAHomomorphism (with a witness pair) if the images do not respect
    the domain's relations, and GeneratorsInsufficient if the keys do not
    generate the domain.  Surjectivity onto the codomain is reported as a flag.
    """
    for g, img in gen_images.items():
        if not 0 <= g < dom.order:
            raise ScenarioError(f"generator index {g} out of range")
        if not 0 <= img < cod.order:
            raise ScenarioError(f"image index {img} out of range")
    known, conflict = _close_partial_hom(dom, cod, gen_images)
    if conflict is not None:
        a, g = conflict
        raise NotAHomomorphism(
            f"images conflict at product {dom.names[a]}*{dom.names[g]}")
    if len(known) != dom.order:
        raise GeneratorsInsufficient(
            f"generators span only {len(known)} of {dom.order} elements")
    images = tuple(known[i] for i in dom.elements())
    for a in dom.elements():
        for b in dom.elements():
            if images[dom.mul(a, b)] != cod.mul(images[a], images[b]):
                raise NotAHomomorphism(
                    f"map fails at ({dom.names[a]}, {dom.names[b]})")
    return GroupHom(dom, cod, images, frozenset(images) == frozenset(cod.elements()))


def kernel(h: GroupHom) -> Subgroup:
    """Preimage of the codomain identity."""
    members = frozenset(i for i in h.domain.elements()
                        if h.images[i] == h.codomain.identity)
    return Subgroup(h.domain, members)


def centralizing_transversal(M: FiniteGroup, K: Subgroup, theta: GroupHom,
                             mode: str = "centralizing",
                             max_gens: int = 3) -> Optional[dict[int, int]]:
    """A transversal h -> t_h for the kernel K of theta, t_identity = identity.

    Modes:
      * ``centralizing``: each t_h lies in the centralizer of K (smallest
        index per coset); exists iff M = K * C_M(K).
      * ``subgroup``: the set {t_h} is itself a subgroup of M (a complement
        to K), searched over generator sets of size <= ``max_gens``.
      * ``both``: a complement subgroup inside the centralizer of K.

    Returns None when no such transversal exists.
    """
    if mode not in ("centralizing", "subgroup", "both"):
        raise ScenarioError(f"unknown transversal mode {mode!r}")
    if kernel(theta).members != K.members:
        raise ScenarioError("K is not the kernel of theta")
    h_elems = sorted(theta.image_set())
    cod_id = theta.codomain.identity
    if mode == "centralizing":
        cent = centralizer(M, K).members
        out = {}
        for h in h_elems:
            if h == cod_id:
                out[h] = M.identity
                continue
            pre = [m for m in M.elements() if theta.images[m] == h and m in cent]
            if not pre:
                return None
            out[h] = pre[0]
        return out
    cent = centralizer(M, K).members if mode == "both" else None
    outside = sorted(set(M.elements()) - K.members)
    for size in range(0, max_gens + 1):
        for gens in combinations(outside, size):
            T = subgroup_generated(M, gens)
            if T.order != len(h_elems):
                continue
            if len(T.members & K.members) != 1:
                continue
            if cent is not None and not T.members <= cent:
                continue
            out = {theta.images[t]: t for t in T.sorted_members()}
            if len(out) != len(h_elems):
                continue
            return {h: out[h] for h in h_elems}
    return None
