"""Tests for the scaffold: lifts, kernel groups, the split criterion,
obstructions, and the verified regular candidate."""

import pytest

from gxjoin.errors import (
    ClosureCapExceeded,
    NotClosed,
    ScenarioError,
    TheoremChoicesUnavailable,
    ThetaNotEpimorphism,
)
from gxjoin.groups import cyclic, dihedral, subgroup_generated
from gxjoin.gwp import (
    all_lifts,
    block_kernel_generators,
    block_kernel_group,
    build_scaffold,
    diagonal_kernel_group,
    diagonal_perm,
    gwp_group,
    kernel_components,
    kernel_members,
    lift,
    lift_hom_report,
    lift_obstruction,
    lift_search,
    regular_candidate,
    scaffold_report,
    y_block_partition,
)
from gxjoin.perms import (
    PermGroup,
    closure,
    group_isomorphic,
    is_block_system,
    is_regular,
    is_transitive,
)

from family import built_scaffolds, scaffold_family


def dihedral_rook_scaffold(d6, c3c3, mode="canonical", **kw):
    return build_scaffold(d6, [d6.index("x")], c3c3,
                          {c3c3.index("a"): d6.index("x"),
                           c3c3.index("b"): d6.identity},
                          mode=mode, **kw)


def cube_quaternion_scaffold(c2cubed, q8, mode="theorem"):
    return build_scaffold(c2cubed, [c2cubed.index("a"), c2cubed.index("b")], q8,
                          {q8.index("i"): c2cubed.index("a"),
                           q8.index("j"): c2cubed.index("b")},
                          mode=mode)


class TestBuild:
    def test_canonical_dihedral_rook(self, d6, c3c3):
        s = dihedral_rook_scaffold(d6, c3c3)
        assert [d6.names[r] for r in s.reps] == ["e", "y"]
        assert {d6.names[h]: c3c3.names[t] for h, t in s.transversal.items()} == \
            {"e": "e", "x": "a", "x2": "a2"}
        assert s.degree == 18

    def test_theorem_cube_quaternion(self, c2cubed, q8):
        s = cube_quaternion_scaffold(c2cubed, q8)
        assert [c2cubed.names[r] for r in s.reps] == ["e", "c"]
        assert set(s.transversal.values()) == {q8.index(n) for n in ("1", "i", "j", "k")}
        assert s.degree == 16

    def test_theorem_unavailable_dihedral_rook(self, d6, c3c3):
        with pytest.raises(TheoremChoicesUnavailable) as err:
            dihedral_rook_scaffold(d6, c3c3, mode="theorem")
        assert "complement" in str(err.value)

    def test_single_block(self, d6):
        s = build_scaffold(d6, range(d6.order), d6, {g: g for g in d6.elements()})
        assert s.n_blocks == 1
        assert s.reps == (d6.identity,)
        assert s.degree == d6.order

    def test_theta_not_epimorphism(self, d6, c3c3):
        with pytest.raises(ThetaNotEpimorphism):
            build_scaffold(d6, [d6.index("x")], c3c3,
                           {c3c3.index("a"): d6.identity,
                            c3c3.index("b"): d6.identity})

    def test_explicit_mode(self, d6, c3c3):
        s = dihedral_rook_scaffold(d6, c3c3, mode="explicit",
                       reps=[d6.identity, d6.index("y")],
                       transversal={d6.identity: c3c3.identity,
                                    d6.index("x"): c3c3.index("a"),
                                    d6.index("x2"): c3c3.index("a2")})
        assert s.choice == dihedral_rook_scaffold(d6, c3c3).choice

    def test_lambda_surjective_per_block(self, d6, c3c3):
        s = dihedral_rook_scaffold(d6, c3c3)
        H = subgroup_generated(d6, [d6.index("x")])
        for bi, rep in enumerate(s.reps):
            seg = {s.lambda_table[s.point(bi, m)] for m in c3c3.elements()}
            assert seg == {d6.mul(h, rep) for h in H.members}


class TestLift:
    def test_identity_lifts_to_identity(self, d6, c3c3):
        s = dihedral_rook_scaffold(d6, c3c3)
        assert lift(s, d6.identity).is_identity()

    def test_canonical_multipliers_dihedral_rook(self, d6, c3c3):
        s = dihedral_rook_scaffold(d6, c3c3)
        lx = lift(s, d6.index("x"))
        a, a2 = c3c3.index("a"), c3c3.index("a2")
        for m in c3c3.elements():
            assert lx(s.point(0, m)) == s.point(0, c3c3.mul(m, a))
            assert lx(s.point(1, m)) == s.point(1, c3c3.mul(m, a2))

    def test_block_swap_cube_quaternion(self, c2cubed, q8):
        s = cube_quaternion_scaffold(c2cubed, q8)
        lc = lift(s, c2cubed.index("c"))
        for m in q8.elements():
            assert lc(s.point(0, m)) == s.point(1, m)
            assert lc(s.point(1, m)) == s.point(0, m)
        la = lift(s, c2cubed.index("a"))
        i = q8.index("i")
        for bi in (0, 1):
            for m in q8.elements():
                assert la(s.point(bi, m)) == s.point(bi, q8.mul(m, i))

    def test_lifts_permute_blocks(self, d6, c3c3):
        s = dihedral_rook_scaffold(d6, c3c3)
        part = y_block_partition(s)
        P = PermGroup(s.degree, closure(s.degree, all_lifts(s)).elements, all_lifts(s))
        assert is_block_system(P, part)

    def test_fiber_blocks_under_regular_group(self, d6, c3c3):
        s = dihedral_rook_scaffold(d6, c3c3)
        R = regular_candidate(s)
        assert is_block_system(R, y_block_partition(s))
        # a partition splitting one fiber copy across blocks is not preserved
        from gxjoin.perms import PartitionOfPoints

        split = PartitionOfPoints(s.degree, (
            frozenset(range(0, 5)),
            frozenset(range(5, 9)) | frozenset(range(9, 18))))
        assert not is_block_system(R, split)


class TestKernelGroups:
    def test_sizes_dihedral_rook(self, d6, c3c3):
        s = dihedral_rook_scaffold(d6, c3c3)
        K = block_kernel_group(s)
        J = diagonal_kernel_group(s)
        assert K.order == 9
        assert J.order == 3
        b = c3c3.index("b")
        expected = {diagonal_perm(s, c3c3.identity), diagonal_perm(s, b),
                    diagonal_perm(s, c3c3.mul(b, b))}
        assert J.elements == frozenset(expected)

    def test_diagonal_cube_quaternion(self, c2cubed, q8):
        s = cube_quaternion_scaffold(c2cubed, q8)
        J = diagonal_kernel_group(s)
        assert J.order == 2
        minus = diagonal_perm(s, q8.index("-1"))
        assert minus in J.elements and minus.order() == 2

    def test_trivial_kernel(self, d6):
        s = build_scaffold(d6, range(d6.order), d6, {g: g for g in d6.elements()})
        assert block_kernel_group(s).order == 1
        assert diagonal_kernel_group(s).order == 1

    def test_kernel_cap(self, d6, c3c3):
        s = dihedral_rook_scaffold(d6, c3c3)
        with pytest.raises(ClosureCapExceeded):
            block_kernel_group(s, cap=8)


class TestGwpGroup:
    def test_trivial_kernel_regular(self, d6):
        s = build_scaffold(d6, range(d6.order), d6, {g: g for g in d6.elements()})
        G = gwp_group(s)
        assert G.order == d6.order
        assert is_regular(G)
        assert group_isomorphic(G, d6) is not None

    def test_dihedral_rook_transitive_not_regular(self, d6, c3c3):
        s = dihedral_rook_scaffold(d6, c3c3)
        G = gwp_group(s)
        assert G.order > 18
        assert is_transitive(G)
        assert not is_regular(G)

    def test_cube_quaternion_transitive(self, c2cubed, q8):
        s = cube_quaternion_scaffold(c2cubed, q8)
        G = gwp_group(s)
        assert is_transitive(G)
        assert G.order == 32

    def test_kernel_normalized_by_lifts(self, d6, c3c3):
        s = dihedral_rook_scaffold(d6, c3c3)
        K = block_kernel_group(s)
        for f in d6.elements():
            p = lift(s, f)
            pinv = p.inverse()
            for k in block_kernel_generators(s):
                assert pinv * k * p in K.elements


class TestLiftHomReport:
    def test_dihedral_rook_all_true(self, d6, c3c3):
        rep = lift_hom_report(dihedral_rook_scaffold(d6, c3c3))
        assert rep.lift_is_hom and rep.transversal_closed and rep.splits

    def test_cube_quaternion_all_false(self, c2cubed, q8):
        rep = lift_hom_report(cube_quaternion_scaffold(c2cubed, q8))
        assert not (rep.lift_is_hom or rep.transversal_closed or rep.splits)

    def test_isomorphism_all_true(self, d6):
        s = build_scaffold(d6, range(d6.order), d6, {g: g for g in d6.elements()})
        rep = lift_hom_report(s)
        assert rep.lift_is_hom and rep.transversal_closed and rep.splits


class TestObstruction:
    def test_identity_pair(self, d6, c3c3):
        s = dihedral_rook_scaffold(d6, c3c3)
        x = d6.index("x")
        assert lift_obstruction(s, d6.identity, x).is_identity()
        assert lift_obstruction(s, x, d6.identity).is_identity()

    def test_group_transversal_all_identity(self, d6, c3c3):
        s = dihedral_rook_scaffold(d6, c3c3)
        for f1 in d6.elements():
            for f2 in d6.elements():
                assert lift_obstruction(s, f1, f2).is_identity()

    def test_cube_quaternion_nonidentity_in_kernel(self, c2cubed, q8):
        s = cube_quaternion_scaffold(c2cubed, q8)
        a = c2cubed.index("a")
        ob = lift_obstruction(s, a, a)
        assert not ob.is_identity()
        comps = kernel_components(s, ob)
        assert all(c in s.kernel_sub.members for c in comps)
        assert comps == (q8.index("-1"), q8.index("-1"))


class TestRegularCandidate:
    def test_dihedral_rook_canonical(self, d6, c3c3):
        s = dihedral_rook_scaffold(d6, c3c3)
        R = regular_candidate(s)
        assert R.order == 18 == s.degree
        assert is_regular(R)
        assert group_isomorphic(R, cyclic(18)) is None
        from gxjoin.groups import direct_product

        assert group_isomorphic(R, direct_product(dihedral(6), cyclic(3))) is not None

    def test_cube_quaternion_theorem(self, c2cubed, q8):
        s = cube_quaternion_scaffold(c2cubed, q8)
        R = regular_candidate(s)
        assert R.order == 16
        assert is_regular(R)

    def test_closure_of_nonidentity_elements(self, d6, c3c3):
        s = dihedral_rook_scaffold(d6, c3c3)
        R = regular_candidate(s)
        gens = [p for p in R.element_list() if not p.is_identity()]
        assert len(gens) == 17
        assert closure(s.degree, gens).order == 18

    def test_bad_choice_not_closed(self, d6, c3c3):
        s = dihedral_rook_scaffold(d6, c3c3)
        x = d6.index("x")
        rows = [list(row) for row in s.choice]
        rows[x][1] = c3c3.index("a2b")  # same kernel coset, breaks closure
        with pytest.raises(NotClosed):
            regular_candidate(s.with_choice(tuple(tuple(r) for r in rows)))

    def test_choice_must_stay_in_coset(self, d6, c3c3):
        s = dihedral_rook_scaffold(d6, c3c3)
        x = d6.index("x")
        rows = [list(row) for row in s.choice]
        rows[x][1] = c3c3.index("b")  # wrong coset entirely
        with pytest.raises(ScenarioError):
            s.with_choice(tuple(tuple(r) for r in rows))

    def test_trivial_kernel_candidate(self, d6):
        s = build_scaffold(d6, range(d6.order), d6, {g: g for g in d6.elements()})
        R = regular_candidate(s)
        assert R.order == d6.order and is_regular(R)


class TestLiftSearch:
    def test_dihedral_rook_finds_canonical_first(self, d6, c3c3):
        s = dihedral_rook_scaffold(d6, c3c3)
        found = lift_search(s, budget=10000)
        assert found == s.choice

    def test_cube_quaternion_within_small_budget(self, c2cubed, q8):
        s = cube_quaternion_scaffold(c2cubed, q8)
        found = lift_search(s, budget=10000)
        assert found is not None
        regular_candidate(s.with_choice(found))

    def test_recovers_from_bad_choice(self, d6, c3c3):
        s = dihedral_rook_scaffold(d6, c3c3)
        x = d6.index("x")
        rows = [list(row) for row in s.choice]
        rows[x][1] = c3c3.index("a2b")
        broken = s.with_choice(tuple(tuple(r) for r in rows))
        found = lift_search(broken, budget=10000)
        assert found is not None and found != broken.choice

    def test_budget_exhaustion(self, d6, c3c3):
        assert lift_search(dihedral_rook_scaffold(d6, c3c3), budget=0) is None

    def test_trivial_kernel_immediate(self, d6):
        s = build_scaffold(d6, range(d6.order), d6, {g: g for g in d6.elements()})
        assert lift_search(s, budget=1) == s.choice


class TestReport:
    def test_scaffold_report_dihedral_rook(self, d6, c3c3):
        rep = scaffold_report(dihedral_rook_scaffold(d6, c3c3))
        assert rep["base_order"] == 6
        assert rep["kernel_order"] == 3
        assert rep["point_count"] == 18
        assert rep["coset_reps"] == ["e", "y"]
        assert rep["lift_hom_report"]["splits"] is True


class TestFamilyProperties:
    """Property suites over the enumerated scaffold family."""

    def test_family_size(self):
        assert len(scaffold_family()) >= 50

    def test_split_criteria_agree(self):
        # lift_hom_report raises VerificationFailed on any disagreement
        for _spec, s in built_scaffolds():
            lift_hom_report(s)

    def test_lifts_permute_blocks_setwise(self):
        for _spec, s in built_scaffolds():
            part = y_block_partition(s)
            block_set = set(part.blocks)
            for p in all_lifts(s):
                for b in part.blocks:
                    assert frozenset(p(v) for v in b) in block_set

    def test_diagonal_and_lifts_transitive(self):
        from gxjoin.perms import orbit

        for _spec, s in built_scaffolds():
            gens = [diagonal_perm(s, ell) for ell in kernel_members(s)[1:]]
            gens.extend(all_lifts(s))
            assert len(orbit(0, gens)) == s.degree

    def test_obstructions_lie_in_blockwise_kernel(self):
        for _spec, s in built_scaffolds():
            for f1 in s.F.elements():
                for f2 in s.F.elements():
                    ob = lift_obstruction(s, f1, f2)
                    kernel_components(s, ob)  # raises on violation
