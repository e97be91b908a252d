"""Tests for the integral E2-page assembly."""

import json

from hypothesis import given, settings
from hypothesis import strategies as st

from sliceforge.e2page import (
    build_e2,
    enumerate_orbits,
    gamma_monomial,
    in_vanishing_region,
    localization_map,
    monomials_of_degree,
    orbit_rep,
    rho2_degree,
)


def names(entry):
    return [c.name for c in entry.c4]


class TestOrbits:
    def test_degree_counts(self):
        assert [len(monomials_of_degree(d)) for d in range(7)] == [1, 2, 3, 6, 9, 12, 18]

    def test_rep_canonical(self):
        for d in range(7):
            for o in monomials_of_degree(d):
                assert orbit_rep(o) == orbit_rep(gamma_monomial(o))
                assert rho2_degree(gamma_monomial(o)) == rho2_degree(o)

    def test_enumeration_complete(self):
        orbits = enumerate_orbits(5)
        covered = set()
        for ob in orbits:
            covered.add(ob.rep)
            covered.add(gamma_monomial(ob.rep))
        for d in range(6):
            assert covered.issuperset(monomials_of_degree(d))

    @given(st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), max_size=3))
    def test_gamma_involution(self, o):
        o = tuple(o)
        assert gamma_monomial(gamma_monomial(o)) == o


class TestLocalizedPage:
    def setup_method(self):
        self.table = build_e2()

    def test_unit_spot(self):
        e = self.table.entry(0, 0)
        assert e.mackey.classify() == "circle"
        assert names(e) == ["1"]

    def test_eta_spot(self):
        e = self.table.entry(1, 1)
        assert "Tr[gt1 aS2]" in names(e)
        assert e.mackey.level4.group().torsion == (2,)

    def test_norm_class_spot(self):
        e = self.table.entry(3, 1)
        assert names(e) == ["N(t1) uL aS"]
        assert e.mackey.classify() == "bullet"

    def test_empty_spot(self):
        assert self.table.entry(1, 5) is None

    def test_checkerboard(self):
        for s, f in self.table.spots():
            assert (s + f) % 2 == 0

    def test_vanishing_region(self):
        for s, f in self.table.spots():
            assert in_vanishing_region(s, f), (s, f)

    def test_axioms(self):
        for s, f in self.table.spots():
            assert self.table.entry(s, f).mackey.check_axioms() == []

    def test_c2_line_matches_monomial_count(self):
        # stem = filtration spots carry every monomial of that degree at level2
        for n in range(5):
            e = self.table.entry(n, n)
            assert e is not None
            assert len(e.c2) == len(monomials_of_degree(n))

    def test_negative_filtration_classes(self):
        # classes below the zero line exist only after localization
        e = self.table.entry(2, -2)
        assert names(e) == ["uL aL^-1"]
        assert e.mackey.classify() == "circle"
        e = self.table.entry(4, -4)
        assert names(e) == ["uL^2 aL^-2"]

    def test_chart_json_schema(self):
        data = json.loads(self.table.chart_json())
        assert data["schema"] == "sliceforge/1"
        assert {"stem_min", "stem_max", "filt_min", "filt_max"} == set(data["window"])
        for dot in data["dots"]:
            assert {"stem", "filtration", "mackey", "names", "c2_names"} <= set(dot)


class TestUnlocalizedPage:
    def test_nonnegative_filtration(self):
        table = build_e2(((-1, 6), (-6, 10)), localized=False)
        assert all(f >= 0 for _, f in table.spots())

    def test_localization_iso_above_zero_line(self):
        rep = localization_map(((-1, 6), (-6, 12)))
        assert rep["iso_spots"]
        assert all(f > 0 for _, f in rep["iso_spots"])
        assert all(f < 0 for _, f in rep["new_spots"])

    def test_zero_line_kernel_is_free(self):
        rep = localization_map(((-1, 8), (-4, 8)))
        for z in rep["zero_line"]:
            assert z["kernel_rank"] >= 1 or z["unlocalized"] == "zero"
