import pytest
from hypothesis import given, settings, strategies as st

from efxcost.errors import (DimensionMismatch, InvalidAllocation, MalformedDocument,
                            NegativeNumber, OverflowRisk)
from efxcost.model import (Allocation, SolveResult, allocation_cost, bundle_value,
                           factor_instance, general_instance, parse_allocation, parse_instance,
                           parse_result, serialize_allocation, serialize_instance,
                           serialize_result)

DISASTER = ('{"n":4,"values":[15,15,15,15,15,15,15,15,10,10,10],'
            '"cost_model":{"type":"factor","alphas":[0,1,1,2]}}')


def test_parse_minimal():
    inst = parse_instance('{"n":2,"values":[1,1],"cost_model":{"type":"factor","alphas":[0,1]}}')
    assert inst.n == 2 and inst.m == 2


def test_parse_disaster_relief():
    inst = parse_instance(DISASTER)
    assert inst == factor_instance([15] * 8 + [10] * 3, [0, 1, 1, 2])
    assert inst.total_value == 150


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch) as err:
        parse_instance('{"n":2,"values":[1],"cost_model":{"type":"general","costs":[[1],[2],[3]]}}')
    assert "cost_model" in str(err.value)


@pytest.mark.parametrize("text,kind", [
    ('{"n":2,"values":[1,-1],"cost_model":{"type":"factor","alphas":[0,1]}}', NegativeNumber),
    ('{"n":2,"values":[1.5],"cost_model":{"type":"factor","alphas":[0,1]}}', MalformedDocument),
    ('{"n":2,"values":[true],"cost_model":{"type":"factor","alphas":[0,1]}}', MalformedDocument),
    ('{"n":2,"values":[1],"cost_model":{"type":"factor","alphas":[0,1]},"x":1}', MalformedDocument),
    ('{"n":2,"values":[NaN],"cost_model":{"type":"factor","alphas":[0,1]}}', MalformedDocument),
    ('{"n":2,"values":[1],"cost_model":{"type":"mystery"}}', MalformedDocument),
    ('{"n":0,"values":[],"cost_model":{"type":"factor","alphas":[]}}', MalformedDocument),
    ('{"n":2,"values":[1]', MalformedDocument),
    ('{"n":2,"values":[1],"cost_model":{"type":"factor","alphas":[1]}}', DimensionMismatch),
])
def test_parse_errors(text, kind):
    with pytest.raises(kind):
        parse_instance(text)


def test_overflow_rejected():
    big = 2**40
    with pytest.raises(OverflowRisk):
        general_instance(2, [big, big], [[big, 0], [0, big]])


def test_overflow_checked_even_with_zero_values():
    with pytest.raises(OverflowRisk):
        general_instance(2, [0, 0], [[2**63, 0], [0, 0]])


def test_bundle_value():
    inst = factor_instance([15, 15, 10], [0, 1])
    assert bundle_value(inst, {0, 1, 2}) == 40
    assert bundle_value(inst, set()) == 0
    assert bundle_value(inst, {0, 2}) == 25
    with pytest.raises(IndexError):
        bundle_value(inst, {3})


def test_allocation_cost_examples():
    inst = factor_instance([15] * 8 + [10] * 3, [0, 1, 1, 2])
    # bundle values 45, 45, 30, 30
    owner = (0, 0, 0, 1, 1, 1, 2, 2, 3, 3, 3)
    assert allocation_cost(inst, Allocation(owner)) == 135
    zero = general_instance(2, [3, 4], [[0, 0], [0, 0]])
    assert allocation_cost(zero, Allocation((1, 0))) == 0
    free = factor_instance([5, 6, 7], [0, 1])
    assert allocation_cost(free, Allocation((0, 0, 0))) == 0


def test_allocation_cost_rejects_bad_owner():
    inst = factor_instance([1, 2], [0, 1])
    with pytest.raises(InvalidAllocation):
        allocation_cost(inst, Allocation((0,)))
    with pytest.raises(InvalidAllocation):
        allocation_cost(inst, Allocation((0, 2)))


def test_serialize_result_shape():
    res = SolveResult(Allocation((0, 1)), 0, "brute", {"states": 4})
    assert serialize_result(res) == '{"cost":0,"owner":[0,1],"algorithm":"brute","stats":{"states":4}}'
    empty = SolveResult(Allocation(()), 0, "dp", {})
    assert '"owner":[]' in serialize_result(empty)


def test_result_round_trip_byte_stable():
    text = '{"cost":135,"owner":[0,0,0,1],"algorithm":"types","stats":{"wall_us":12}}'
    assert serialize_result(parse_result(text)) == text


def test_allocation_round_trip():
    alloc = Allocation((2, 0, 1))
    assert parse_allocation(serialize_allocation(alloc)) == alloc


instances = st.integers(1, 4).flatmap(lambda n: st.integers(0, 6).flatmap(lambda m: st.one_of(
    st.builds(general_instance, st.just(n), st.lists(st.integers(0, 50), min_size=m, max_size=m),
              st.lists(st.lists(st.integers(0, 50), min_size=m, max_size=m), min_size=n, max_size=n)),
    st.builds(factor_instance, st.lists(st.integers(0, 50), min_size=m, max_size=m),
              st.lists(st.integers(0, 9), min_size=n, max_size=n)),
)))


@given(instances)
def test_instance_round_trip(inst):
    text = serialize_instance(inst)
    assert parse_instance(text) == inst
    assert serialize_instance(parse_instance(text)) == text


@settings(max_examples=60)
@given(st.data())
def test_factor_matches_equivalent_general(data):
    n = data.draw(st.integers(1, 4))
    values = data.draw(st.lists(st.integers(0, 20), max_size=6))
    alphas = data.draw(st.lists(st.integers(0, 9), min_size=n, max_size=n))
    owner = data.draw(st.lists(st.integers(0, n - 1), min_size=len(values), max_size=len(values)))
    fac = factor_instance(values, alphas)
    gen = general_instance(n, values, [[a * v for v in values] for a in alphas])
    alloc = Allocation(tuple(owner))
    assert allocation_cost(fac, alloc) == allocation_cost(gen, alloc)


@given(st.lists(st.integers(0, 20), min_size=1, max_size=8), st.data())
def test_bundle_value_monotone(values, data):
    inst = factor_instance(values, [1])
    bundle = data.draw(st.sets(st.integers(0, len(values) - 1)))
    extra = data.draw(st.integers(0, len(values) - 1))
    assert bundle_value(inst, bundle | {extra}) >= bundle_value(inst, bundle)
