"""Wreath-style permutation scaffolds over a regular base group.

The base group F acts on itself by right multiplication.  A subgroup H fixes
the block containing the identity; the blocks are the right cosets of H, one
representative per block with the identity representing its own coset.  Each
block carries a copy of a fiber group M together with an epimorphism theta
from M onto H with kernel K.  Points of the bundle Y are (block, fiber
element) pairs, globally indexed as block*|M| + element.

Right multiplication by f sends block rep r to the coset of r*f, i.e.
``r*f = h*r'`` for a unique h in H and rep r'.  A *lift choice* assigns each
(f, block) pair a fiber multiplier projecting to that h; the lift of f then
maps (block, m) to (block', m*multiplier).  Choices derived from a single
transversal {t_h} give the canonical lifts; arbitrary per-(f, block) choices
differ from these by kernel elements and are explored by ``lift_search``.

Verified constructions: the blockwise kernel group K, its diagonal subgroup,
the full group generated by kernel and lifts, and the candidate regular
subgroup (diagonal times lifts), whose closure and regularity are checked
rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iter_product
from typing import Iterator, Mapping, Optional, Sequence

from .config import DEFAULT_CAPS
from .errors import (
    ClosureCapExceeded,
    GeneratorsInsufficient,
    NotAHomomorphism,
    NotClosed,
    NotRegular,
    ScenarioError,
    TheoremChoicesUnavailable,
    ThetaNotEpimorphism,
    VerificationFailed,
)
from .groups import (
    FiniteGroup,
    GroupHom,
    Subgroup,
    centralizing_transversal,
    direct_complement,
    hom_from_images,
    kernel,
    right_coset_partition,
    right_coset_reps,
    subgroup_generated,
)
from .perms import PartitionOfPoints, Perm, PermGroup, closure, orbit

# choice[f][block] = fiber multiplier used by the lift of f on that block
LiftChoice = tuple[tuple[int, ...], ...]

MODES = ("canonical", "theorem", "explicit")


class Scaffold:
    """All data of one bundle: base group, blocks, fiber, transversal, lifts."""

    def __init__(self, F: FiniteGroup, H: Subgroup, M: FiniteGroup,
                 theta: GroupHom, reps: Sequence[int],
                 transversal: Mapping[int, int], mode: str,
                 choice: Optional[LiftChoice] = None):
        self.F = F
        self.H = H
        self.M = M
        self.theta = theta
        self.kernel_sub = kernel(theta)
        self.reps = tuple(reps)
        self.mode = mode
        self.n_blocks = len(self.reps)
        self.fiber_order = M.order
        self.degree = self.n_blocks * self.fiber_order

        cosets = right_coset_partition(F, H, self.reps)
        block_of = [-1] * F.order
        for bi, coset in enumerate(cosets):
            for g in coset:
                block_of[g] = bi
        self.block_of = tuple(block_of)

        # transversal: H element -> fiber preimage, identity to identity
        self.transversal = dict(transversal)
        if set(self.transversal) != set(H.members):
            raise ThetaNotEpimorphism("transversal keys must be exactly H")
        if self.transversal[F.identity] != M.identity:
            raise ThetaNotEpimorphism("transversal must send identity to identity")
        for h, t in self.transversal.items():
            if theta.images[t] != h:
                raise ThetaNotEpimorphism(
                    f"transversal entry {M.names[t]} does not project to {F.names[h]}")

        # block_action[f][bi] = (bj, h) with reps[bi]*f = h*reps[bj]
        action = []
        for f in F.elements():
            row = []
            for r in self.reps:
                g = F.mul(r, f)
                bj = self.block_of[g]
                h = F.mul(g, F.inv(self.reps[bj]))
                row.append((bj, h))
            action.append(tuple(row))
        self.block_action = tuple(action)

        self.choice = self._transversal_choice() if choice is None else choice
        self._validate_choice(self.choice)

        # lambda_table[point] = base group element the point projects to
        lam = []
        for bi, r in enumerate(self.reps):
            for m in M.elements():
                lam.append(F.mul(theta.images[m], r))
        self.lambda_table = tuple(lam)
        for bi, coset in enumerate(cosets):
            seg = self.lambda_table[bi * M.order:(bi + 1) * M.order]
            if frozenset(seg) != coset:
                raise VerificationFailed(
                    "internal error: projection not onto its coset")

    # -- points --

    def point(self, block: int, m: int) -> int:
        return block * self.fiber_order + m

    def split_point(self, p: int) -> tuple[int, int]:
        return divmod(p, self.fiber_order)

    # -- lift choices --

    def _transversal_choice(self) -> LiftChoice:
        return tuple(
            tuple(self.transversal[h] for (_bj, h) in self.block_action[f])
            for f in self.F.elements())

    def _validate_choice(self, choice: LiftChoice) -> None:
        F, M = self.F, self.M
        if len(choice) != F.order or any(len(row) != self.n_blocks for row in choice):
            raise ScenarioError("lift choice table has the wrong shape")
        for f in F.elements():
            for bi in range(self.n_blocks):
                _bj, h = self.block_action[f][bi]
                c = choice[f][bi]
                if self.theta.images[c] != h:
                    raise ScenarioError(
                        f"lift choice for ({F.names[f]}, block {bi}) lies in the "
                        f"wrong kernel coset")
        if any(c != M.identity for c in choice[F.identity]):
            raise ScenarioError("the identity must lift to the identity")

    def with_choice(self, choice: LiftChoice) -> "Scaffold":
        return Scaffold(self.F, self.H, self.M, self.theta, self.reps,
                        self.transversal, "explicit", choice)

    def __repr__(self):
        return (f"Scaffold(|F|={self.F.order}, |H|={self.H.order}, "
                f"|M|={self.M.order}, blocks={self.n_blocks}, mode={self.mode!r})")


def build_scaffold(F: FiniteGroup, H_gens: Sequence[int], M: FiniteGroup,
                   theta_gen_images: Mapping[int, int], mode: str = "canonical",
                   *, reps: Optional[Sequence[int]] = None,
                   transversal: Optional[Mapping[int, int]] = None,
                   choice: Optional[LiftChoice] = None) -> Scaffold:
    """Assemble a scaffold from base group, stabilizer generators, fiber and theta.

    Modes:
      * ``canonical``: smallest-index coset reps, smallest-index transversal.
      * ``theorem``: reps inside a commuting direct complement of H and a
        transversal inside the centralizer of the kernel; raises
        TheoremChoicesUnavailable naming whichever is missing.
      * ``explicit``: caller supplies ``reps`` and ``transversal`` (and may
        supply a full per-(element, block) lift choice table).
    """
    if mode not in MODES:
        raise ScenarioError(f"unknown scaffold mode {mode!r}")
    H = subgroup_generated(F, H_gens)
    try:
        theta = hom_from_images(M, F, theta_gen_images)
    except (NotAHomomorphism, GeneratorsInsufficient) as exc:
        raise ThetaNotEpimorphism(f"theta does not extend to a homomorphism: {exc}") from exc
    if theta.image_set() != H.members:
        raise ThetaNotEpimorphism(
            f"theta image has order {len(theta.image_set())}, expected H of order {H.order}")
    K = kernel(theta)

    if mode == "canonical":
        rep_list = right_coset_reps(F, H)
        trans = _smallest_transversal(F, H, M, theta)
    elif mode == "theorem":
        complement = direct_complement(F, H)
        cent = centralizing_transversal(M, K, theta, mode="centralizing")
        missing = []
        if complement is None:
            missing.append("no commuting direct complement of the stabilizer "
                           "in the base group")
            if not _central_cover(F, H):
                missing.append("the stabilizer and its centralizer do not "
                               "cover the base group")
        if cent is None:
            missing.append("no kernel-centralizing transversal in the fiber "
                           "group (the kernel and its centralizer do not "
                           "cover the fiber group)")
        if missing:
            raise TheoremChoicesUnavailable("; ".join(missing))
        rep_members = complement.sorted_members()
        rep_members.remove(F.identity)
        rep_list = right_coset_reps(F, H, override=[F.identity] + rep_members)
        trans = cent
    else:
        if reps is None or transversal is None:
            raise ScenarioError("explicit mode requires reps and transversal")
        rep_list = right_coset_reps(F, H, override=list(reps))
        trans = dict(transversal)

    return Scaffold(F, H, M, theta, rep_list, trans, mode, choice)


def _central_cover(G: FiniteGroup, S: Subgroup) -> bool:
    from .groups import centralizer

    cent = centralizer(G, S)
    return len({G.mul(h, c) for h in S.members for c in cent.members}) == G.order


def _smallest_transversal(F: FiniteGroup, H: Subgroup, M: FiniteGroup,
                          theta: GroupHom) -> dict[int, int]:
    out = {F.identity: M.identity}
    for h in sorted(H.members):
        if h == F.identity:
            continue
        out[h] = min(m for m in M.elements() if theta.images[m] == h)
    return out


# -- lifts and kernel groups ----------------------------------------------------


def lift(s: Scaffold, f: int) -> Perm:
    """The permutation of the bundle lifting right multiplication by f."""
    fo = s.fiber_order
    table = s.M.table
    img = [0] * s.degree
    for bi in range(s.n_blocks):
        bj, _h = s.block_action[f][bi]
        c = s.choice[f][bi]
        src, dst = bi * fo, bj * fo
        for m in range(fo):
            img[src + m] = dst + table[m][c]
    return Perm(tuple(img))


def all_lifts(s: Scaffold) -> list[Perm]:
    return [lift(s, f) for f in s.F.elements()]


def diagonal_perm(s: Scaffold, ell: int) -> Perm:
    """Simultaneous right multiplication by a kernel element on every block."""
    if ell not in s.kernel_sub.members:
        raise ScenarioError(f"{s.M.names[ell]} is not a kernel element")
    fo = s.fiber_order
    table = s.M.table
    img = [0] * s.degree
    for bi in range(s.n_blocks):
        off = bi * fo
        for m in range(fo):
            img[off + m] = off + table[m][ell]
    return Perm(tuple(img))


def kernel_members(s: Scaffold) -> list[int]:
    """Kernel elements, identity first then ascending."""
    rest = sorted(s.kernel_sub.members - {s.M.identity})
    return [s.M.identity] + rest


def block_kernel_generators(s: Scaffold) -> list[Perm]:
    """Per-block kernel multiplications; they generate the blockwise kernel group."""
    fo = s.fiber_order
    table = s.M.table
    gens = []
    for bi in range(s.n_blocks):
        off = bi * fo
        for ell in kernel_members(s)[1:]:
            img = list(range(s.degree))
            for m in range(fo):
                img[off + m] = off + table[m][ell]
            gens.append(Perm(tuple(img)))
    return gens


def block_kernel_group(s: Scaffold, cap: Optional[int] = None) -> PermGroup:
    """The full blockwise kernel group, of order |K|^blocks."""
    cap = DEFAULT_CAPS.closure if cap is None else cap
    members = kernel_members(s)
    total = len(members) ** s.n_blocks
    if total > cap:
        raise ClosureCapExceeded(
            f"blockwise kernel group has {total} elements, cap is {cap}")
    fo = s.fiber_order
    table = s.M.table
    elems = []
    for combo in iter_product(members, repeat=s.n_blocks):
        img = [0] * s.degree
        for bi, ell in enumerate(combo):
            off = bi * fo
            for m in range(fo):
                img[off + m] = off + table[m][ell]
        elems.append(Perm(tuple(img)))
    return PermGroup(s.degree, elems, block_kernel_generators(s))


def diagonal_kernel_group(s: Scaffold) -> PermGroup:
    """The diagonal copy of the kernel inside the blockwise kernel group."""
    elems = [diagonal_perm(s, ell) for ell in kernel_members(s)]
    gens = elems[1:] if len(elems) > 1 else elems
    return PermGroup(s.degree, elems, gens)


def gwp_group(s: Scaffold, cap: Optional[int] = None) -> PermGroup:
    """The group generated by the blockwise kernel group and all lifts."""
    return closure(s.degree, block_kernel_generators(s) + all_lifts(s), cap=cap)


def y_block_partition(s: Scaffold) -> PartitionOfPoints:
    fo = s.fiber_order
    blocks = tuple(frozenset(range(bi * fo, (bi + 1) * fo))
                   for bi in range(s.n_blocks))
    return PartitionOfPoints(s.degree, blocks)


# -- the lift homomorphism criterion ---------------------------------------------


@dataclass(frozen=True)
class LiftHomReport:
    """Three equivalent conditions, each evaluated independently."""

    lift_is_hom: bool          # f -> lift(f) multiplicative for all pairs
    transversal_closed: bool   # t_h * t_h' = t_(hh') for all pairs
    splits: bool               # the transversal is a complement subgroup

    def as_dict(self) -> dict:
        return {"lift_is_hom": self.lift_is_hom,
                "transversal_closed": self.transversal_closed,
                "splits": self.splits}


def lift_hom_report(s: Scaffold) -> LiftHomReport:
    """Evaluate the three conditions on the scaffold's transversal.

    Always uses the lifts derived from the transversal (not a custom choice
    table).  The three booleans are asserted equal; disagreement would mean
    an implementation fault, not a property of the instance.
    """
    F, M = s.F, s.M
    t = s.transversal
    base = s if s.choice == s._transversal_choice() else s.with_choice(
        s._transversal_choice())
    lifts = all_lifts(base)
    lift_is_hom = all(
        lifts[f1] * lifts[f2] == lifts[F.mul(f1, f2)]
        for f1 in F.elements() for f2 in F.elements())
    transversal_closed = all(
        M.mul(t[h1], t[h2]) == t[F.mul(h1, h2)]
        for h1 in t for h2 in t)
    tset = frozenset(t.values())
    is_subgroup = all(M.mul(a, b) in tset for a in tset for b in tset)
    trivial_meet = tset & s.kernel_sub.members == {M.identity}
    full_product = len({M.mul(k, v) for k in s.kernel_sub.members
                        for v in tset}) == M.order
    splits = is_subgroup and trivial_meet and full_product
    if not (lift_is_hom == transversal_closed == splits):
        raise VerificationFailed(
            f"equivalent split conditions disagree: hom={lift_is_hom}, "
            f"closed={transversal_closed}, splits={splits}")
    return LiftHomReport(lift_is_hom, transversal_closed, splits)


def kernel_components(s: Scaffold, p: Perm) -> tuple[int, ...]:
    """Per-block kernel multipliers of a blockwise kernel permutation.

    Raises VerificationFailed if ``p`` moves a block or acts by anything other
    than right multiplication by a kernel element.
    """
    fo = s.fiber_order
    M = s.M
    out = []
    for bi in range(s.n_blocks):
        off = bi * fo
        q = p(off + M.identity)
        bj, ell = s.split_point(q)
        if bj != bi:
            raise VerificationFailed(f"permutation moves block {bi} to {bj}")
        if ell not in s.kernel_sub.members:
            raise VerificationFailed(
                f"block {bi} multiplier {M.names[ell]} is not a kernel element")
        for m in M.elements():
            if p(off + m) != off + M.mul(m, ell):
                raise VerificationFailed(
                    f"block {bi} action is not right multiplication")
        out.append(ell)
    return tuple(out)


def lift_obstruction(s: Scaffold, f1: int, f2: int) -> Perm:
    """lift(f1) * lift(f2) * lift(f1*f2)^-1, verified to act blockwise by
    kernel elements (i.e. to lie in the blockwise kernel group)."""
    p = lift(s, f1) * lift(s, f2) * lift(s, s.F.mul(f1, f2)).inverse()
    kernel_components(s, p)
    return p


# -- the regular candidate --------------------------------------------------------


def regular_elements(s: Scaffold) -> list[tuple[int, int, Perm]]:
    """The products (diagonal kernel element) * (lift), in deterministic order."""
    lifts = all_lifts(s)
    out = []
    for ell in kernel_members(s):
        d = diagonal_perm(s, ell)
        for f in s.F.elements():
            out.append((ell, f, d * lifts[f]))
    return out


def regular_candidate(s: Scaffold) -> PermGroup:
    """The candidate regular subgroup: diagonal kernel times lifts.

    This is a verified construction: the set must be duplicate-free, closed
    under composition, and act regularly; otherwise NotClosed/NotRegular is
    raised naming a witness.
    """
    elems = regular_elements(s)
    index: dict[Perm, tuple[int, int]] = {}
    for ell, f, p in elems:
        if p in index:
            ell0, f0 = index[p]
            raise NotRegular(
                f"candidate elements collide: ({s.M.names[ell]},{s.F.names[f]}) "
                f"and ({s.M.names[ell0]},{s.F.names[f0]})")
        index[p] = (ell, f)
    perms = [p for _ell, _f, p in elems]
    for p1 in perms:
        for p2 in perms:
            if p1 * p2 not in index:
                e1, e2 = index[p1], index[p2]
                raise NotClosed(
                    f"product of ({s.M.names[e1[0]]},{s.F.names[e1[1]]}) and "
                    f"({s.M.names[e2[0]]},{s.F.names[e2[1]]}) leaves the candidate set")
    if len(orbit(0, perms)) != s.degree:
        raise NotRegular("candidate group is not transitive")
    if sum(1 for p in perms if p(0) == 0) != 1:
        raise NotRegular("candidate group has a non-trivial point stabilizer")
    return PermGroup(s.degree, perms, perms)


def _choice_candidates(s: Scaffold) -> Iterator[LiftChoice]:
    """Candidate lift choices: current, then transversal-centralizing, then
    the full lexicographic enumeration of kernel-coset representatives."""
    tried = []
    first = s.choice
    tried.append(first)
    yield first
    cent = centralizing_transversal(s.M, s.kernel_sub, s.theta, mode="centralizing")
    if cent is not None:
        alt = tuple(tuple(cent[h] for (_bj, h) in s.block_action[f])
                    for f in s.F.elements())
        if alt not in tried:
            tried.append(alt)
            yield alt
    F, M = s.F, s.M
    slots = [(f, bi) for f in F.elements() if f != F.identity
             for bi in range(s.n_blocks)]
    options = []
    for f, bi in slots:
        _bj, h = s.block_action[f][bi]
        options.append(sorted(m for m in M.elements() if s.theta.images[m] == h))
    identity_row = tuple(M.identity for _ in range(s.n_blocks))
    for combo in iter_product(*options):
        rows = {F.identity: list(identity_row)}
        for (f, bi), c in zip(slots, combo):
            rows.setdefault(f, [0] * s.n_blocks)[bi] = c
        cand = tuple(tuple(rows[f]) for f in F.elements())
        if cand in tried:
            continue
        yield cand


def lift_search(s: Scaffold, budget: Optional[int] = None) -> Optional[LiftChoice]:
    """Search for a lift choice whose regular candidate verifies.

    Tries the scaffold's current choice first, then a kernel-centralizing
    transversal if one exists, then backtracks lexicographically over all
    per-(element, block) kernel-coset representatives.  Each candidate costs
    one verification against the budget; returns None when it runs out.
    """
    budget = DEFAULT_CAPS.lift_budget if budget is None else budget
    spent = 0
    for cand in _choice_candidates(s):
        if spent >= budget:
            return None
        spent += 1
        try:
            regular_candidate(s.with_choice(cand))
        except (NotClosed, NotRegular):
            continue
        return cand
    return None


def scaffold_report(s: Scaffold) -> dict:
    """A JSON-ready summary of the scaffold."""
    report = lift_hom_report(s)
    return {
        "base_order": s.F.order,
        "stabilizer_order": s.H.order,
        "fiber_order": s.M.order,
        "kernel_order": s.kernel_sub.order,
        "block_count": s.n_blocks,
        "point_count": s.degree,
        "mode": s.mode,
        "coset_reps": [s.F.names[r] for r in s.reps],
        "transversal": {s.F.names[h]: s.M.names[t]
                        for h, t in sorted(s.transversal.items())},
        "lift_hom_report": report.as_dict(),
    }
