import random
from itertools import combinations

import pytest

from conewise.cones import Cone, intersect
from conewise.errors import DegreeOutOfRange, HypothesisFailed, Inconsistent, NoFullDimensionalCone
from conewise.fans import Fan
from conewise.multival import (
    FunctionalMultiset,
    MultivaluedCPL,
    check_consistency,
    construct_nontrivial,
    elementary_symmetric,
    facet_functionals,
    is_trivial,
    restrict_multiset,
    restrict_polynomial,
    triviality,
)

OCTANT = Cone.from_generators([(1, 0, 0), (0, 1, 0), (0, 0, 1)])


class TestFacetFunctionals:
    def test_octant_dual_basis(self):
        assert set(facet_functionals(OCTANT)) == {(1, 0, 0), (0, 1, 0), (0, 0, 1)}

    def test_rank_two_cone(self):
        c = Cone.from_generators([(1, 0), (1, 2)])
        assert set(facet_functionals(c)) == {(0, 1), (2, -1)}
        for u in facet_functionals(c):
            assert all(sum(a * b for a, b in zip(u, g)) >= 0 for g in c.rays)

    def test_payne_sigma1(self, payne_fan):
        s1 = payne_fan.find_cone_by_rays(payne_fan.labels["sigma1"]).cone
        funcs = facet_functionals(s1)
        assert len(funcs) == 4
        for u in funcs:
            assert all(sum(a * b for a, b in zip(u, g)) >= 0 for g in s1.rays)
            assert sum(1 for g in s1.rays
                       if sum(a * b for a, b in zip(u, g)) == 0) >= 2


class TestConstruct:
    def test_octahedron_parity_multisets(self, octahedron_fan):
        f = construct_nontrivial(octahedron_fan)
        assert f.degree == 4
        counts = {}
        for m in f.multisets:
            counts[m] = counts.get(m, 0) + 1
        odd = next(m for m, c in counts.items() if c == 1)
        even = next(m for m, c in counts.items() if c == 7)
        assert odd == FunctionalMultiset.of(
            [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)])
        assert even == FunctionalMultiset.of(
            [(0, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)])

    def test_cube_degree_and_zero_membership(self, cube_fan):
        f = construct_nontrivial(cube_fan)
        assert f.degree == 8  # 2^(4-1) facets of a quadrilateral cone
        sigma = next(i for i in range(len(f.multisets))
                     if sum(1 for m in f.multisets if m == f.multisets[i]) == 1)
        a1 = f.multisets[sigma]
        a2 = f.multisets[(sigma + 1) % len(f.multisets)]
        zero = (0, 0, 0)
        assert zero in a2 and zero not in a1

    def test_facet_restrictions_agree(self, cube_fan):
        f = construct_nontrivial(cube_fan)
        sigma = next(i for i in range(len(f.multisets))
                     if sum(1 for m in f.multisets if m == f.multisets[i]) == 1)
        cone = cube_fan.maximal_cones[sigma]
        a1 = f.multisets[sigma].elements
        a2 = next(m for m in f.multisets if m != f.multisets[sigma]).elements
        for facet in cone.facets():
            assert restrict_multiset(a1, facet) == restrict_multiset(a2, facet)

    def test_scaling_parameter(self, octahedron_fan):
        f = construct_nontrivial(octahedron_fan, scale=2)
        assert f.degree == 4
        assert check_consistency(f).ok
        f2 = construct_nontrivial(octahedron_fan, scale=[1, 2, 3])
        assert check_consistency(f2).ok

    def test_hypothesis_failed(self):
        fan = Fan(2, [(1, 0), (0, 1)], [[0, 1]])
        with pytest.raises(HypothesisFailed):
            construct_nontrivial(fan)


class TestConsistency:
    def test_constructed_functions(self, cube_fan, octahedron_fan, payne_fan):
        for fan in (cube_fan, octahedron_fan, payne_fan):
            f = construct_nontrivial(fan)
            report = check_consistency(f)
            assert report.ok and not report.mismatches

    def test_violation_detected(self, octahedron_fan):
        k = len(octahedron_fan.maximal_cones)
        multisets = [FunctionalMultiset.of([(0, 1, 0)])] * k
        multisets[0] = FunctionalMultiset.of([(1, 0, 0)])
        f = MultivaluedCPL(octahedron_fan, tuple(multisets))
        report = check_consistency(f)
        assert not report.ok
        assert any(0 in m["cones"] for m in report.mismatches)

    def test_constant_multiset(self, octahedron_fan):
        k = len(octahedron_fan.maximal_cones)
        f = MultivaluedCPL(octahedron_fan,
                           tuple([FunctionalMultiset.of([(1, 2, 3), (1, 2, 3)])] * k))
        assert check_consistency(f).ok


class TestTriviality:
    def test_constructed_is_nontrivial(self, cube_fan, octahedron_fan, payne_fan):
        for fan in (cube_fan, octahedron_fan, payne_fan):
            f = construct_nontrivial(fan)
            report = triviality(f)
            assert not report.trivial
            assert report.witness_cone is not None
            assert f.multisets[report.witness_cone] != report.candidate

    def test_global_restriction_is_trivial(self, octahedron_fan):
        k = len(octahedron_fan.maximal_cones)
        f = MultivaluedCPL(octahedron_fan,
                           tuple([FunctionalMultiset.of([(1, 0, 2), (0, 1, 1)])] * k))
        assert is_trivial(f)

    def test_degree_one_from_conewise_linear(self):
        # integral slopes 1 and 0 on the two half-lines
        p1 = Fan(1, [(1,), (-1,)], [[0], [1]])
        f = MultivaluedCPL(p1, (FunctionalMultiset.of([(1,)]),
                                FunctionalMultiset.of([(0,)])))
        assert check_consistency(f).ok
        assert not is_trivial(f)

    def test_errors(self, octahedron_fan):
        rays_only = Fan(2, [(1, 0), (0, 1)], [[0], [1]])
        f = MultivaluedCPL(rays_only, (FunctionalMultiset.of([(1, 0)]),
                                       FunctionalMultiset.of([(0, 1)])))
        with pytest.raises(NoFullDimensionalCone):
            triviality(f)
        k = len(octahedron_fan.maximal_cones)
        multisets = [FunctionalMultiset.of([(0, 1, 0)])] * k
        multisets[0] = FunctionalMultiset.of([(1, 0, 0)])
        bad = MultivaluedCPL(octahedron_fan, tuple(multisets))
        with pytest.raises(Inconsistent):
            triviality(bad)


class TestElementarySymmetric:
    def test_sum_of_two(self):
        fan = Fan(2, [(1, 0), (0, 1)], [[0, 1]])
        f = MultivaluedCPL(fan, (FunctionalMultiset.of([(1, 2), (3, 4)]),))
        assert elementary_symmetric(f, 1)[0] == {(1, 0): 4, (0, 1): 6}

    def test_product_of_coordinates(self):
        fan = Fan(2, [(1, 0), (0, 1)], [[0, 1]])
        f = MultivaluedCPL(fan, (FunctionalMultiset.of([(1, 0), (0, 1)]),))
        assert elementary_symmetric(f, 2)[0] == {(1, 1): 1}

    def test_octahedron_first_class_is_global(self, octahedron_fan):
        f = construct_nontrivial(octahedron_fan)
        polys = elementary_symmetric(f, 1)
        assert all(p == polys[0] for p in polys)
        assert polys[0] == {(1, 0, 0): 2, (0, 1, 0): 2, (0, 0, 1): 2}

    def test_restrictions_agree_on_shared_spans(self, cube_fan):
        f = construct_nontrivial(cube_fan)
        for i in (2, 3):
            polys = elementary_symmetric(f, i)
            for a, b in combinations(range(len(cube_fan.maximal_cones)), 2):
                meet = intersect(cube_fan.maximal_cones[a],
                                 cube_fan.maximal_cones[b])
                basis = list(meet.rays) + list(meet.lineality)
                if not basis:
                    continue
                ra = restrict_polynomial(polys[a], basis, 3)
                rb = restrict_polynomial(polys[b], basis, 3)
                assert ra == rb

    def test_degree_out_of_range(self, octahedron_fan):
        f = construct_nontrivial(octahedron_fan)
        with pytest.raises(DegreeOutOfRange):
            elementary_symmetric(f, 0)
        with pytest.raises(DegreeOutOfRange):
            elementary_symmetric(f, 5)


class TestRestrictionRepresentation:
    def test_full_dim_restriction_is_injective(self, octahedron_fan):
        rng = random.Random(59)
        cone = octahedron_fan.maximal_cones[0]
        for _ in range(20):
            u = tuple(rng.randint(-4, 4) for _ in range(3))
            v = tuple(rng.randint(-4, 4) for _ in range(3))
            same = restrict_multiset([u], cone) == restrict_multiset([v], cone)
            assert same == (u == v)
