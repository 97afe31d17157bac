"""Subsets, monotone measures, pavings and measure families."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from levelmeasure.measure import (
    MeasureFamily,
    MeasureViolation,
    Paving,
    additive_measure,
    complement,
    counting_measure,
    dual_measure_family,
    find_violation,
    full_mask,
    indicator_measure,
    inner_set_function,
    is_null,
    mask_literal,
    mask_of,
    measure_from_function,
    members,
    necessity_measure,
    null_elements,
    parse_mask,
    possibility_measure,
    subsets,
    uniform_probability,
    validate_monotone,
)

from support import bits, index_sets, oracle_null, random_measure

seeds = st.integers(min_value=0, max_value=2 ** 32)
sizes = st.integers(min_value=1, max_value=5)


def _is_monotone_measure(mu):
    """The three axioms checked on every nested pair of subsets."""
    n = mu.n
    X = full_mask(n)
    if mu(0) != 0 or not mu(X) > 0:
        return False
    return all(mu(A) <= mu(B) for B in range(1 << n) for A in subsets(B))


# --- masks -------------------------------------------------------------------------

def test_mask_helpers():
    assert members(0b1011) == [0, 1, 3]
    assert mask_of([1, 3]) == 0b101
    assert mask_of([0, 2], one_based=False) == 0b101
    assert complement(0b001, 3) == 0b110
    assert parse_mask("0b110") == 6
    assert parse_mask("110") == 6
    assert mask_literal(5, 4) == "0b0101"
    with pytest.raises(ValueError):
        parse_mask("0b1000", 3)


@given(st.integers(min_value=0, max_value=255))
def test_subsets_enumerates_every_submask_once(mask):
    subs = list(subsets(mask))
    assert len(subs) == len(set(subs)) == 2 ** mask.bit_count()
    assert all(s & ~mask == 0 for s in subs)


# --- validation --------------------------------------------------------------------

def test_validate_reports_a_witness_pair():
    with pytest.raises(MeasureViolation) as err:
        validate_monotone([0, 2, 1, 1], 2)
    v = err.value.violation
    assert v.reason == "not monotone"
    assert v.pair == (0b01, 0b11)
    assert "0b01" in str(err.value)


@pytest.mark.parametrize("table, reason", [
    ([1, 1, 1, 1], "mu(empty) must be 0"),
    ([0, 0, 0, 0], "mu(X) must be positive"),
])
def test_validate_rejects_axiom_failures(table, reason):
    with pytest.raises(MeasureViolation, match="mu"):
        validate_monotone(table)
    assert find_violation(table, 2).reason == reason


def test_validate_accepts_mapping_and_literals():
    mu = validate_monotone({"0b00": 0, "0b01": "1/2", "0b10": 0.25, "0b11": 1}, 2)
    assert mu(0b01) == Fraction(1, 2)
    assert mu(0b10) == Fraction(1, 4)
    with pytest.raises(ValueError, match="not total"):
        validate_monotone({0: 0, 3: 1}, 2)
    with pytest.raises(ValueError):
        validate_monotone([0, 1, 1])


@given(seeds, sizes)
def test_random_measures_satisfy_axioms(seed, n):
    mu = random_measure(random.Random(seed), n)
    assert _is_monotone_measure(mu)
    assert find_violation(mu.values, n) is None


@pytest.mark.parametrize("n", [1, 3, 6, 12])
def test_constructors_are_exhaustively_monotone(n):
    rng = random.Random(n)
    pi = [Fraction(rng.randint(0, 4), 4) for _ in range(n)]
    pi[rng.randrange(n)] = 1
    built = [counting_measure(n), uniform_probability(n), additive_measure(range(1, n + 1)),
             possibility_measure(pi), necessity_measure(pi), indicator_measure(n),
             indicator_measure(n, 2, "any_nonempty")]
    for mu in built:
        assert find_violation(mu.values, n) is None


def test_measure_from_function_checks():
    mu = measure_from_function(3, lambda m: m.bit_count() ** 2)
    assert mu(0b111) == 9
    with pytest.raises(MeasureViolation):
        measure_from_function(2, lambda m: 1 if m == 1 else 0)


def test_additive_and_uniform():
    mu = additive_measure([1, 2, 3])
    assert mu.is_additive()
    assert mu(0b101) == 4
    assert uniform_probability(4)(0b0011) == Fraction(1, 2)
    assert not possibility_measure([1, Fraction(1, 2)]).is_additive()
    with pytest.raises(ValueError):
        additive_measure([0, 0])


@given(st.lists(st.integers(min_value=0, max_value=4), min_size=1, max_size=6))
def test_necessity_is_dual_of_possibility(raw):
    pi = [Fraction(x, 4) for x in raw]
    pi[0] = 1
    n = len(pi)
    poss, nec = possibility_measure(pi), necessity_measure(pi)
    assert all(nec(E) == 1 - poss(complement(E, n)) for E in range(1 << n))


def test_possibility_rejects_unnormalized():
    with pytest.raises(ValueError, match="attain 1"):
        possibility_measure([Fraction(1, 2), Fraction(1, 4)])


# --- null sets ---------------------------------------------------------------------

@given(seeds, st.integers(min_value=1, max_value=4))
def test_null_elements_agree_with_definition(seed, n):
    mu = random_measure(random.Random(seed), n)
    for idx in index_sets(n):
        assert is_null(mu, bits(idx)) == oracle_null(mu, idx, n)


def test_counting_measure_has_no_null_points():
    assert null_elements(counting_measure(4)) == 0
    assert null_elements(indicator_measure(3)) == 0
    # mu depends only on element 1
    mu = validate_monotone([0, 1, 0, 1, 0, 1, 0, 1], 3)
    assert null_elements(mu) == 0b110


# --- pavings -----------------------------------------------------------------------

def test_paving_always_contains_empty_set():
    p = Paving.of(3, ["0b011", 0b100])
    assert 0 in p and len(p) == 3
    assert p.nonempty() == (0b011, 0b100)
    assert not p.is_union_closed()
    closed = p.union_closure()
    assert closed.is_union_closed() and 0b111 in closed
    assert Paving.power_set(3).is_power_set()
    assert Paving.of(3, [1, 3, 7]).is_chain()


@given(seeds, st.integers(min_value=1, max_value=4))
def test_inner_set_function_on_power_set_is_identity(seed, n):
    mu = random_measure(random.Random(seed), n)
    ps = Paving.power_set(n)
    assert all(inner_set_function(mu, ps, B) == mu(B) for B in range(1 << n))


def test_inner_set_function_on_small_paving():
    mu = counting_measure(3)
    p = Paving.of(3, [0b001, 0b110])
    assert inner_set_function(mu, p, 0b011) == 1
    assert inner_set_function(mu, p, 0b111) == 2
    assert inner_set_function(mu, p, 0b010) == 0


# --- families ----------------------------------------------------------------------

def _linear_family(n, seed):
    rng = random.Random(seed)
    a = random_measure(rng, n, normalize=True)
    b = random_measure(rng, n, normalize=True)
    return MeasureFamily(lambda t: measure_from_function(
        n, lambda m: (1 - Fraction(t)) * a(m) + Fraction(t) * b(m), check=False))


@given(seeds, st.integers(min_value=1, max_value=4))
def test_dual_family_is_an_involution_on_the_interval(seed, n):
    fam = _linear_family(n, seed)
    twice = dual_measure_family(dual_measure_family(fam, 1), 1)
    for t in (Fraction(k, 8) for k in range(9)):
        assert twice(t) == fam(t)


def test_dual_family_needs_constant_mass():
    grow = MeasureFamily(lambda t: measure_from_function(2, lambda m: (1 + Fraction(t)) * m.bit_count()))
    with pytest.raises(ValueError, match="total mass"):
        dual_measure_family(grow, 1)


def test_family_tag_spot_check():
    mu = counting_measure(2)
    up = MeasureFamily(lambda t: measure_from_function(2, lambda m: (1 + t) * m.bit_count()), "nondecreasing")
    assert up.check_tag([0, 1, 2]) is None
    wrong = MeasureFamily(up.at, "nonincreasing")
    assert wrong.check_tag([0, 1]) is not None
    assert MeasureFamily.constant(mu).check_tag([0, 5]) is None
