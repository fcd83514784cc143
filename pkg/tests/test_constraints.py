import pytest
from hypothesis import given, strategies as st

from abelstab.chern import PHI, PSI, PSI_HAT, ChernVector, apply, derived_dual, fmt_phi, shift
from abelstab.constraints import (
    FPart,
    TPart,
    Claim,
    DecompositionTable,
    WitProfile,
    builtin_rules,
    check_duality_ss,
    check_mukai_ss,
    check_table,
    close_claims,
    duality_identity,
    enumerate_tables,
    minimal_tables,
    parse_claim,
    table_to_json,
    transform_window,
)
from abelstab.heart import interval

C = ChernVector.of
O = C(1, 0, 0, 0)
POINT = C(0, 0, 0, 1)


def names(violations):
    return sorted({v.rule for v in violations})


def test_rule_set():
    rules = builtin_rules()
    assert len(rules) == 12
    assert len({r.name for r in rules}) == 12
    assert all(r.anchor for r in rules)


def test_claims():
    assert parse_claim("HN(0,1]") is Claim.HN_0_1
    assert parse_claim("semistable") is Claim.SEMISTABLE
    with pytest.raises(ValueError):
        parse_claim("stable-ish")
    assert close_claims(POINT, ()) >= {Claim.TORSION, Claim.T0, Claim.COH_LE1}
    assert Claim.COH_LE1 in close_claims(C(0, 0, 1, 0), ())
    assert Claim.COH_LE1 not in close_claims(C(0, 1, 0, 0), ())
    # semistable of slope 1/2 lies in T0 and HN(0,1]
    got = close_claims(C(2, 1, 0, 0), [Claim.SEMISTABLE])
    assert {Claim.T0, Claim.HN_0_1, Claim.HN_0_INF} <= got and Claim.F0 not in got


def test_check_table_accepts_known_transforms():
    assert check_table(DecompositionTable(O, {3: POINT})) == []
    assert check_table(DecompositionTable(POINT, {0: O})) == []


def test_check_table_alternating_sum():
    bad = DecompositionTable(O, {3: C(0, 0, 0, 2)})
    assert "alternating-sum" in names(check_table(bad))


def test_check_table_rule_violation():
    # a T0 sheaf cannot have E^3; build a table with E^3 = point and matching sum
    src = C(1, 1, 0, 0)
    target = fmt_phi(src)
    t = DecompositionTable(src, {3: POINT, 0: target + POINT}, claims=[Claim.T0])
    v = check_table(t)
    assert "T0-no-E3" in names(v)
    assert any("[" in str(x) for x in v)


def test_check_table_wit_and_annotation():
    t = DecompositionTable(O, {3: POINT}, wit=WitProfile.of(0))
    assert names(check_table(t)) == ["wit"]
    t = DecompositionTable(POINT, {0: O}, annotations={0: (interval(1, 2),)})
    assert names(check_table(t)) == ["annotation"]


def test_check_table_rank_and_effective():
    t = DecompositionTable(C(-1, 0, 0, 0), {3: -POINT})
    assert "rank" in names(check_table(t))
    assert check_table(t, rank_nonneg=False, effective=False) == []
    t = DecompositionTable(O, {2: C(0, 0, 0, -1)})
    assert "effective" in names(check_table(t))


def test_table_validation():
    with pytest.raises(ValueError):
        DecompositionTable(O, None)
    with pytest.raises(ValueError):
        DecompositionTable(O, {4: O})
    with pytest.raises(ValueError):
        WitProfile.of(5)


def test_enumerate_structure_sheaf():
    # without claims E^1 = point is numerically possible too
    found = [t.nonzero_parts() for t in minimal_tables(enumerate_tables(O, 1))]
    assert {3: POINT} in found and {1: POINT} in found
    # O_X lies in F0, which forces E^0 = 0 and E^1 in F0
    mins = minimal_tables(enumerate_tables(O, 1, claims=[Claim.F0]))
    assert [t.nonzero_parts() for t in mins] == [{3: POINT}]


def test_enumerate_point():
    assert [t.nonzero_parts() for t in minimal_tables(enumerate_tables(POINT, 1))] == [{0: O}]


def test_enumerate_pure_curve_negative_degree_is_empty():
    assert enumerate_tables(C(0, 0, 1, 1), 2, wit=WitProfile.of(1)) == []


def test_enumerate_curve_transforms():
    for beta in range(-2, 1):
        found = [t.nonzero_parts() for t in enumerate_tables(C(0, 0, 1, beta), 3, wit=WitProfile.of(1))]
        assert {1: C(-beta, 1, 0, 0)} in found


def test_enumerate_homogeneous_shadow():
    assert enumerate_tables(C(2, 0, 0, 1), 2, claims=[Claim.SEMISTABLE]) == []
    got = enumerate_tables(C(2, 0, 0, 0), 2, claims=[Claim.SEMISTABLE])
    assert [t.nonzero_parts() for t in got] == [{3: C(0, 0, 0, 2)}]


def test_enumerate_source_violation_is_empty():
    assert enumerate_tables(C(-1, 0, 0, 0), 2) == []
    assert enumerate_tables(O, 2, claims=[Claim.TORSION]) == []


def test_enumerate_bound_guard():
    for bad in (0, 13):
        with pytest.raises(ValueError):
            enumerate_tables(O, bad)


def test_enumerate_every_result_checks_clean():
    src = C(0, 0, 1, -1)
    tables = enumerate_tables(src, 1)
    assert tables
    for t in tables:
        assert check_table(t) == []
        assert t.alternating_sum() == fmt_phi(src)
    keys = [t.sort_key() for t in tables]
    assert keys == sorted(keys)


def test_enumerate_deterministic_across_workers():
    src = C(0, 0, 1, -1)
    one = [table_to_json(t) for t in enumerate_tables(src, 1)]
    many = [table_to_json(t) for t in enumerate_tables(src, 1, workers=3)]
    assert one and one == many


def test_psi_tables_shadow_middle_entries():
    # for Psi-hat the alternating sum keeps the middle entries (a2-2a1+a0, -a1+a0)
    src = C(1, 1, 1, 1)
    tables = enumerate_tables(src, 1, functor=(PSI_HAT,))
    assert tables
    for t in tables:
        total = t.alternating_sum()
        assert (total.a1, total.a2) == (src.a2 - 2 * src.a1 + src.a0, src.a0 - src.a1)
        assert set(t.nonzero_parts()) <= {0, 1, 2}
    assert all(check_table(t) == [] for t in enumerate_tables(src, 1, functor=(PSI,)))


def test_transform_window():
    assert transform_window(TPart) == {0, 1, 2}
    assert transform_window(FPart) == {0, 1, 2}
    assert transform_window(FPart, normalized=False) == {1, 2, 3}
    with pytest.raises(ValueError):
        transform_window("other")


def test_mukai_examples():
    assert check_mukai_ss(POINT, {(3, 0): POINT}) == []
    assert check_mukai_ss(O, {(0, 3): O}, parts={3: POINT}) == []
    for key in ((0, 0), (1, 0), (2, 3), (3, 3)):
        assert "mukai-vanishing" in names(check_mukai_ss(POINT, {(3, 0): POINT, key: O}))
    v = check_mukai_ss(POINT, {(3, 0): POINT, (0, 1): O})
    assert "mukai-iso" in names(v)
    assert "mukai-euler" in names(check_mukai_ss(POINT, {(3, 0): C(0, 0, 0, 2)}))
    assert "mukai-column" in names(check_mukai_ss(O, {(0, 3): O}, parts={3: C(0, 0, 0, 2)}))
    with pytest.raises(ValueError):
        check_mukai_ss(O, {(4, 0): O})


ints = st.integers(-10**4, 10**4)
vectors = st.builds(ChernVector, ints, ints, ints, ints)


@given(vectors)
def test_duality_identity_holds(v):
    lhs, rhs = duality_identity(v)
    assert lhs == rhs


@given(vectors)
def test_phi_twice_is_shift_three(v):
    # Phi o Phi = (-1)^* [-3] and (-1)^* acts trivially on characters
    assert apply([PHI, PHI], v) == shift(v, 3)


def test_duality_check():
    t = DecompositionTable(O, {3: POINT})
    # dual table must sum to RDelta(Phi O)[3] = point
    dual = DecompositionTable(derived_dual(O), {0: POINT})
    assert check_duality_ss(t, dual) == []
    wrong = DecompositionTable(derived_dual(O), {1: POINT})
    assert names(check_duality_ss(t, wrong)) == ["duality-tables"]
    with pytest.raises(ValueError):
        check_duality_ss(t, DecompositionTable(O, {}))


def test_table_json():
    t = DecompositionTable(O, {3: POINT}, claims=[Claim.T0])
    assert table_to_json(t) == {
        "source": [1, 0, 0, 0],
        "functor": "phi",
        "parts": {"3": [0, 0, 0, 1]},
        "mass": "1",
        "claims": ["T0"],
    }


@pytest.mark.parametrize("alpha, beta", [(1, 0), (2, -1), (3, -5)])
def test_curve_table_clean(alpha, beta):
    t = DecompositionTable(C(0, 0, alpha, beta), {1: C(-beta, alpha, 0, 0)}, annotations={1: (interval(0, "+inf", lo_open=True),)})
    assert check_table(t) == []


def test_curve_with_positive_degree_has_negative_rank():
    t = DecompositionTable(C(0, 0, 1, 1), {1: C(-1, 1, 0, 0)})
    assert "rank" in names(check_table(t))
