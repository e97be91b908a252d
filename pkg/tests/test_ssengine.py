"""Tests for the localized slice chart page runner."""

from hypothesis import given, settings
from hypothesis import strategies as st

from sliceforge import ssengine as ss
from sliceforge.e2page import build_e2


def one_run():
    if not hasattr(one_run, "state"):
        one_run.state = ss.run()
    return one_run.state


class TestParser:
    def test_norm_round_trip(self):
        for text in [
            "N(t1) aS aL",
            "2 uL aL^-1",
            "N(t2) u2S uL aS aL^2",
            "N(t1)^4 u2S^2 aL^4",
        ]:
            atoms = ss.parse_expr(text)
            assert len(atoms) == 1
            assert atoms[0].name() == text

    def test_transfer_round_trip(self):
        for text in ["Tr[gt1 aS2]", "Tr[gt1^3 u2S2^2 aS2^7]", "Tr[gt3 aS2^7]"]:
            atoms = ss.parse_expr(text)
            assert len(atoms) == 1
            assert atoms[0].name() == text

    def test_sum(self):
        atoms = ss.parse_expr("Tr[gt1 t2^2 aS2^15] + Tr[t1^4 gt2 aS2^15]")
        assert len(atoms) == 2

    def test_gold_relation(self):
        tr1, tr2 = ss.parse_expr("Tr[t1 aS2]"), ss.parse_expr("Tr[gt1 aS2]")
        prod = ss.mul_expr(tr1, tr2)
        names = sorted(a.name() for a in prod)
        assert names == ["Tr[gt1^2 aS2^2]", "Tr[t1 gt1 aS2^2]"]

    def test_norm_frobenius(self):
        norm = ss.parse_expr("N(t1)")
        tr = ss.parse_expr("Tr[gt2 aS2^3]")
        prod = ss.mul_expr(norm, tr)
        assert [a.name() for a in prod] == ["Tr[t1 gt1 gt2 aS2^3]"]

    def test_norm_degree(self):
        (atom,) = ss.parse_expr("N(t2) aS^3 aL^3")
        assert ss.atom_spot(atom) == (3, 9)

    def test_restriction_of_norm(self):
        (atom,) = ss.parse_expr("N(t1)")
        res = atom.restriction()
        assert res is not None and res.name() == "t1 gt1"


class TestRules:
    def test_script_round_trip(self):
        rules = ss.builtin_rules()
        text = ss.rules_to_script(rules)
        again = ss.load_script(text)
        assert ss.rules_to_script(again) == text

    def test_pages_present(self):
        pages = sorted({r.page for r in ss.builtin_rules()})
        assert pages == [3, 5, 7, 11, 13, 15, 29, 31]

    def test_min_page_gap(self):
        assert ss.min_page(1, 0, 0, 0) > ss.MIN_PAGE_CAP
        assert ss.min_page(1, 0, 1, 1) > ss.MIN_PAGE_CAP
        assert ss.min_page(1, 0, 1, 0) == 3
        assert ss.min_page(1, 0, 2, 0) == 5
        assert ss.min_page(2, 0, 2, 0) == 7
        assert ss.min_page(1, 1, 0, 0) == 5
        assert ss.min_page(1, 2, 0, 0) == 13
        assert ss.min_page(1, 4, 0, 0) == 29


class TestPages:
    def setup_method(self):
        self.state = one_run()

    def test_no_contradictions(self):
        assert self.state.contradictions == []

    def test_d3_eta_column(self):
        hits = [
            d
            for d in self.state.log
            if d.page == 3 and d.source_spot == (3, -1)
        ]
        assert {d.target_spot for d in hits} == {(2, 2)}
        assert any(d.source_name == "Tr[gt1 u2S2 aS2^-1]" for d in hits)

    def test_d5_u_lambda_square(self):
        hits = [
            d
            for d in self.state.log
            if d.page == 5 and d.source_spot == (4, -4)
        ]
        assert [(d.target_spot, d.target_name) for d in hits] == [
            ((3, 1), "N(t1) uL aS")
        ]

    def test_stem8_census(self):
        pages = sorted(
            {d.page for d in self.state.log if d.target_spot == (8, 8)}
        )
        assert pages == [3, 5, 7, 13, 15]
        d13 = [
            d
            for d in self.state.log
            if d.page == 13 and d.target_spot == (8, 8)
        ]
        assert [d.source_name for d in d13] == ["N(t1) uL^4 aS aL^-3"]

    def test_odd_page_checkerboard(self):
        for d in self.state.log:
            s, f = d.source_spot
            assert d.target_spot == (s - 1, f + d.page)
            assert d.page % 2 == 1

    def test_d_squared_zero(self):
        by_source = {}
        for d in self.state.log:
            by_source.setdefault(d.source_spot, []).append(d)
        for d in self.state.log:
            for e in by_source.get(d.target_spot, []):
                assert e.page > d.page or e.source_name != d.target_name


class TestHomotopy:
    EXPECTED = [
        (0, [4], ["red"], ["1"]),
        (1, [2], ["red"], ["N(t1) aS aL"]),
        (2, [4], ["red"], ["2 uL aL^-1"]),
        (3, [2, 2], ["black", "red"], ["Tr[gt2 aS2^3]", "N(t2) aS^3 aL^3"]),
        (4, [2], ["black"], ["Tr[gt1 t2 aS2^4]"]),
        (5, [2], ["black"], ["Tr[t1 gt1 gt2 aS2^5]"]),
        (6, [4, 2], ["red", "black"], ["2 uL^3 aL^-3", "Tr[t1 gt1^2 t2 aS2^6]"]),
        (
            7,
            [2, 2, 2, 2],
            ["red", "black", "black", "red"],
            [
                "N(t2) u2S uL aS aL^2",
                "Tr[gt3 aS2^7]",
                "Tr[t1^2 gt1^2 gt2 aS2^7]",
                "N(t3) aS^7 aL^7",
            ],
        ),
        (
            8,
            [2, 2, 2],
            ["black", "red", "black"],
            [
                "Tr[gt1 t3 aS2^8]",
                "N(t1) N(t2) u2S^2 aL^4",
                "N(t1)^4 u2S^2 aL^4",
            ],
        ),
    ]

    def test_table(self):
        table = ss.assemble_homotopy(one_run())
        got = [(h.stem, h.orders, h.colors, h.generators) for h in table]
        assert got == self.EXPECTED
        assert all(not h.unresolved for h in table)


class TestExotic:
    def test_pairs(self):
        exotic = ss.detect_exotic(one_run())
        stems = sorted({e.stem for e in exotic})
        assert stems == [2, 6, 10]
        for e in exotic:
            assert e.check_jump()
            jump = e.target_filtration - e.source_filtration
            assert jump == {2: 4, 6: 12, 10: 20}[e.stem]

    def test_kinds_paired(self):
        exotic = ss.detect_exotic(one_run())
        for stem in (2, 6, 10):
            kinds = sorted(e.kind for e in exotic if e.stem == stem)
            assert kinds == ["restriction", "transfer"]


class TestAudits:
    def test_naturality(self):
        assert ss.naturality_audit(one_run()) == []

    def test_norm_vanishing(self):
        assert ss.norm_vanishing(ss.builtin_rules()) == []

    def test_permanent_cycles(self):
        for row in ss.permanent_cycle_audit(ss.builtin_rules()):
            k, i = row["k"], row["i"]
            assert row["survives"] == (i < 2 ** (k + 1) - 1)
            if not row["survives"]:
                assert row["killed_by"] == 2 ** (k + 2) - 3

    def test_shuffle_invariant(self):
        assert ss.shuffle_invariant(((-1, 10), (-10, 30)), seed=5)


class TestC2Run:
    def test_dims_match_quotient_algebra(self):
        run = ss.C2Run(16)
        for n in range(17):
            total = sum(run.survivors(n).values())
            assert total == ss.quotient_algebra_dim(n)

    def test_concentrated_on_diagonal(self):
        run = ss.C2Run(16)
        for n in range(17):
            surv = run.survivors(n)
            assert set(surv) <= {n}


class TestProperties:
    @given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2))
    @settings(max_examples=40, deadline=None)
    def test_mul_expr_commutes(self, i, j, k):
        a = ss.parse_expr(f"N(t1)^{i} aL^{j}" if i else f"aL^{j}")
        b = ss.parse_expr(f"u2S^{k} aS" if k else "aS")
        ab = sorted(x.name() for x in ss.mul_expr(a, b))
        ba = sorted(x.name() for x in ss.mul_expr(b, a))
        assert ab == ba

    @given(st.tuples(st.integers(0, 4), st.integers(0, 4)),
           st.tuples(st.integers(0, 4), st.integers(0, 4)))
    @settings(max_examples=40, deadline=None)
    def test_c2_product_degree(self, p, q):
        a = ss.C2Mono(((p[0], p[1]),), 0, 0)
        b = ss.C2Mono(((q[0], q[1]),), 0, 0)
        da, db = a.degree(), b.degree()
        dc = ss.mul_c2(a, b).degree()
        assert dc == (da[0] + db[0], da[1] + db[1])

    def test_chart_json_stable(self):
        state = one_run()
        assert state.chart_json() == state.chart_json()
