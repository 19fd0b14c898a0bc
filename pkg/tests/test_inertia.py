"""The order tables here were derived once by hand from the tame
character exponents and are frozen; the module must reproduce them via
the brute-force matrix oracle, and the closed gcd formulas must agree.
"""

from math import gcd

import pytest

from modcert.exact import INF, prime_split, rational_slot
from modcert.grouptheory import exceptional_threshold
from modcert.inertia import (
    WILD_TRIPLES,
    InertiaDescriptor,
    kraus_descriptor,
    matrix_order_oracle,
    order_table,
)
from modcert.localred import ReductionClass, tate
from modcert.model import Curve

ORD = ReductionClass.ADDITIVE_POT_GOOD_ORDINARY
SS = ReductionClass.ADDITIVE_POT_GOOD_SUPERSINGULAR
PM = ReductionClass.ADDITIVE_POT_MULT

# frozen expected tables, keyed by v(disc)
ORD_5 = {3: 4, 6: 4, 9: 4}
ORD_7 = {2: 6, 4: 2, 6: 6, 8: 6, 10: 2}
SS_5 = {2: 2, 4: 6, 6: 6, 8: 2, 10: 6}
SS_7 = {3: 8, 6: 8, 9: 8}


class TestOrderTables:
    def test_ordinary_tables(self):
        assert order_table(5, ORD) == ORD_5
        assert order_table(7, ORD) == ORD_7

    def test_supersingular_tables(self):
        assert order_table(5, SS) == SS_5
        assert order_table(7, SS) == SS_7

    def test_potentially_multiplicative_constant(self):
        assert set(order_table(5, PM).values()) == {4}
        assert set(order_table(7, PM).values()) == {6}

    def test_admissible_valuations_follow_divisibility(self):
        # (p-1) v / 12 integral for ordinary, (p+1) v / 12 for supersingular
        assert set(ORD_5) == {v for v in range(1, 12) if (4 * v) % 12 == 0}
        assert set(ORD_7) == {v for v in range(1, 12) if (6 * v) % 12 == 0}
        assert set(SS_5) == {v for v in range(1, 12) if (6 * v) % 12 == 0}
        assert set(SS_7) == {v for v in range(1, 12) if (8 * v) % 12 == 0}


class TestOracleAgainstFormulas:
    """Acceptance-style: the matrix oracle must match the closed forms
    m = (p-1)/gcd(p-1, 1-2a) and n = (p+1)/gcd(p+1, 2a+1)."""

    def test_ordinary_formula(self):
        for p, table in ((5, ORD_5), (7, ORD_7)):
            for v_disc, expected in table.items():
                desc = kraus_descriptor(p, ORD, v_disc, 0, 0, assume_tame=True)
                a = desc.alpha
                m = (p - 1) // gcd(p - 1, 1 - 2 * a)
                assert matrix_order_oracle(p, desc) == m == expected == desc.bound

    def test_supersingular_formula(self):
        for p, table in ((5, SS_5), (7, SS_7)):
            for v_disc, expected in table.items():
                desc = kraus_descriptor(p, SS, v_disc, assume_tame=True)
                a = desc.alpha
                n = (p + 1) // gcd(p + 1, 2 * a + 1)
                assert matrix_order_oracle(p, desc) == n == expected == desc.bound

    def test_potentially_multiplicative_is_full_tame(self):
        for p in (5, 7):
            desc = kraus_descriptor(p, PM, 1)
            assert matrix_order_oracle(p, desc) == p - 1

    def test_level2_exponents_are_frobenius_conjugate(self):
        for p, table in ((5, SS_5), (7, SS_7)):
            for v_disc in table:
                desc = kraus_descriptor(p, SS, v_disc, assume_tame=True)
                e1, e2 = desc.exponents
                assert e2 == (p * e1) % (p * p - 1)


class TestSpotDescriptors:
    def test_supersingular_alpha4(self):
        d = kraus_descriptor(5, SS, 8, 4, 4)
        assert d.kind == "tame2"
        assert d.alpha == 4
        assert d.exponents == (9, 21)
        assert d.bound == 2

    def test_pot_mult_exponent_pair(self):
        d = kraus_descriptor(7, PM, 7)
        assert d.kind == "tame1"
        assert d.exponents == (4, 3)
        assert d.bound == 6

    def test_ordinary_alpha1(self):
        d = kraus_descriptor(5, ORD, 3)
        assert d.exponents == (0, 1)
        assert d.bound == 4

    def test_wild_triple(self):
        d = kraus_descriptor(5, SS, 2, 1, 1)
        assert d.kind == "wild"
        assert d.contains_p_group
        assert d.bound is None and d.exponents is None
        assert d.wild_triple == (2, 1, 1)
        with pytest.raises(ValueError):
            matrix_order_oracle(5, d)

    def test_infinite_coefficient_valuation_is_tame(self):
        # v(A) = inf (A = 0) can never match a wild triple
        d = kraus_descriptor(5, SS, 2, INF, 1)
        assert d.kind == "tame2" and d.bound == 2


class TestFromActualCurves:
    def run(self, a, p):
        _, inv = tate(Curve(a), rational_slot(p))
        return inv, kraus_descriptor(p, inv.reduction, inv.v_disc, inv.v_c4, inv.v_c6)

    def test_supersingular_at_5(self):
        inv, d = self.run([0, 0, 0, 625, 625], 5)
        assert inv.kodaira.symbol == "IV*"
        assert d.kind == "tame2" and d.alpha == 4 and d.bound == 2

    def test_ordinary_at_7(self):
        inv, d = self.run([0, 0, 0, 49, 49], 7)
        assert inv.kodaira.symbol == "IV"
        assert d.kind == "tame1" and d.alpha == 2 and d.bound == 2

    def test_pot_mult_at_5(self):
        inv, d = self.run([0, 5, 0, 0, 625], 5)
        assert inv.kodaira.symbol == "I1*"
        assert d.kind == "tame1" and d.exponents == (3, 2) and d.bound == 4

    def test_wild_at_5(self):
        inv, d = self.run([0, 0, 0, 5, 5], 5)
        assert d.kind == "wild" and d.wild_triple == (2, 1, 1)

    def test_ramified_base_slot_rejected(self):
        ram = [s for s in prime_split(5, 5) if s.e == 2][0]
        _, inv = tate(Curve([0, 0, 0, 5, 0]), ram)
        assert inv.e == 2
        with pytest.raises(ValueError, match="absolutely unramified"):
            kraus_descriptor(5, inv.reduction, inv.v_disc, inv.v_c4, inv.v_c6, e=inv.e)


def _compatible(vd, va, vb):
    """Can (v(disc), v(A), v(B)) occur for disc = -16(4A^3 + 27B^2)?"""
    if 3 * va != 2 * vb:
        return vd == min(3 * va, 2 * vb)
    return vd >= 3 * va


def test_exactly_six_wild_triples():
    assert len(WILD_TRIPLES) == 6
    hits = set()
    for vd in range(1, 12):
        for va in range(13):
            for vb in range(13):
                if not _compatible(vd, va, vb):
                    continue
                for p in (5, 7):
                    try:
                        d = kraus_descriptor(p, SS, vd, va, vb)
                    except ValueError:
                        continue  # inadmissible alpha; fine
                    if d.kind == "wild":
                        hits.add((vd, va, vb))
                        assert (vd, va, vb) in WILD_TRIPLES
    assert hits == set(WILD_TRIPLES)
    for triple in WILD_TRIPLES:
        assert _compatible(*triple)


class TestErrorPaths:
    def test_non_integral_alpha(self):
        with pytest.raises(ValueError, match="inconsistent local data"):
            kraus_descriptor(7, ORD, 3)
        with pytest.raises(ValueError, match="inconsistent local data"):
            kraus_descriptor(5, ORD, 4)
        with pytest.raises(ValueError, match="inconsistent local data"):
            kraus_descriptor(5, SS, 5, 2, 3)

    def test_ramified_base(self):
        with pytest.raises(ValueError, match="Kraus requires absolutely unramified"):
            kraus_descriptor(5, ORD, 3, e=2)

    def test_out_of_range_valuation(self):
        with pytest.raises(ValueError):
            kraus_descriptor(5, ORD, 12)
        with pytest.raises(ValueError):
            kraus_descriptor(5, ORD, 0)

    def test_wrong_prime_or_class(self):
        with pytest.raises(ValueError):
            kraus_descriptor(3, ORD, 3)
        with pytest.raises(ValueError):
            kraus_descriptor(5, ReductionClass.GOOD, 0)
        with pytest.raises(ValueError):
            kraus_descriptor(5, ReductionClass.MULTIPLICATIVE, 1)

    def test_ss_without_coefficient_valuations(self):
        with pytest.raises(ValueError, match="rule out wild"):
            kraus_descriptor(5, SS, 4)


def test_exceptional_configurations_link_to_thresholds():
    # exceptional <=> bound below the group-theoretic threshold
    t5, t7 = exceptional_threshold(5), exceptional_threshold(7)
    assert {v for v, b in SS_5.items() if b < t5} == {2, 8}
    assert {v for v in SS_5 if v % 3 == 2} == {2, 8}
    assert {v for v, b in ORD_7.items() if b < t7} == {4, 10}
    assert {v for v in ORD_7 if v % 3 == 1} == {4, 10}
    assert all(b >= t5 for b in ORD_5.values())
    assert all(b >= t7 for b in SS_7.values())
    assert all(b >= t5 for b in order_table(5, PM).values())
    assert all(b >= t7 for b in order_table(7, PM).values())


def test_descriptor_as_dict_round_trip():
    d = kraus_descriptor(5, SS, 8, 4, 4)
    dd = d.as_dict()
    assert dd["kind"] == "tame2"
    assert dd["exponents"] == [9, 21]
    assert dd["bound"] == 2
    w = kraus_descriptor(5, SS, 3, 1, 2).as_dict()
    assert w["wild_triple"] == [3, 1, 2] and w["contains_p_group"]
