import pytest
from hypothesis import given
from hypothesis import strategies as st

from rmtmoments.errors import ContractViolation
from rmtmoments.layout import (
    as_layout,
    canonicalize,
    format_layout,
    goe_s1,
    parse_layout,
    partitions,
    s2,
    s3,
    w_s1,
    w_s2,
    w_s3,
)

layouts = st.lists(st.integers(0, 9), min_size=0, max_size=6).map(tuple)
positive_first = st.lists(st.integers(0, 9), min_size=0, max_size=5).flatmap(
    lambda rest: st.integers(1, 12).map(lambda first: (first, *rest))
)


@pytest.mark.parametrize(
    "layout, parts, zeros",
    [((2, 0, 4), (4, 2), 1), ((), (), 0), ((3, 3, 1), (3, 3, 1), 0), ((0, 0), (), 2)],
)
def test_canonicalize_examples(layout, parts, zeros):
    c = canonicalize(layout)
    assert c.sorted_parts == parts
    assert c.zero_count == zeros


@pytest.mark.parametrize(
    "fn, layout, arg, expected",
    [
        (s2, (4,), 1, (0, 2)),
        (s2, (2,), 1, (0, 0)),
        (s2, (3, 5), 2, (1, 0, 5)),
        (s3, (2, 2), 2, (2,)),
        (s3, (1, 1), 2, (0,)),
        (s3, (3, 2, 4), 3, (5, 2)),
        (w_s2, (2,), 1, (1, 0)),
        (w_s2, (3,), 2, (2, 0)),
        (w_s2, (3, 1), 1, (1, 1, 1)),
        (w_s3, (1, 1), 2, (1,)),
        (w_s3, (2, 3), 2, (4,)),
        (w_s3, (1, 2, 2), 3, (2, 2)),
    ],
)
def test_indexed_transforms(fn, layout, arg, expected):
    assert fn(layout, arg) == expected


@pytest.mark.parametrize(
    "fn, layout, expected",
    [
        (w_s1, (1,), (0,)),
        (w_s1, (4, 2), (3, 2)),
        (w_s1, (2, 0, 1), (1, 0, 1)),
        (goe_s1, (2,), (0,)),
        (goe_s1, (4, 2), (2, 2)),
        (goe_s1, (3, 1), (1, 1)),
    ],
)
def test_peel_transforms(fn, layout, expected):
    assert fn(layout) == expected


@pytest.mark.parametrize(
    "call",
    [
        lambda: s2((4,), 0),
        lambda: s2((4,), 4),
        lambda: s2((0, 2), 1),
        lambda: s3((2,), 2),
        lambda: s3((2, 2), 1),
        lambda: s3((2, 2), 3),
        lambda: w_s1((0, 1)),
        lambda: w_s1(()),
        lambda: w_s2((1,), 1),
        lambda: w_s3((3,), 2),
        lambda: goe_s1((1, 3)),
    ],
)
def test_out_of_range_is_contract_violation(call):
    with pytest.raises(ContractViolation):
        call()


@given(positive_first, st.data())
def test_transforms_reduce_total(l, data):
    L = sum(l)
    if l[0] >= 2:
        q = data.draw(st.integers(1, l[0] - 1))
        assert sum(s2(l, q)) == L - 2
        assert sum(w_s2(l, q)) == L - 1
        assert sum(goe_s1(l)) == L - 2
    assert sum(w_s1(l)) == L - 1
    if len(l) >= 2:
        k = data.draw(st.integers(2, len(l)))
        assert sum(s3(l, k)) == L - 2 and len(s3(l, k)) == len(l) - 1
        assert sum(w_s3(l, k)) == L - 1 and len(w_s3(l, k)) == len(l) - 1


@given(layouts)
def test_canonicalize_idempotent(l):
    c = canonicalize(l)
    assert canonicalize(c.reconstruct()) == c
    assert all(x > 0 for x in c.sorted_parts)
    assert list(c.sorted_parts) == sorted(c.sorted_parts, reverse=True)
    assert sorted(c.reconstruct()) == sorted(l)


@given(layouts, st.randoms())
def test_canonicalize_permutation_invariant(l, rnd):
    shuffled = list(l)
    rnd.shuffle(shuffled)
    assert canonicalize(shuffled) == canonicalize(l)


@pytest.mark.parametrize("text, layout", [("4,2,2", (4, 2, 2)), ("", ()), (" 3 , 0 ", (3, 0)), ("7", (7,))])
def test_parse_layout(text, layout):
    assert parse_layout(text) == layout
    assert parse_layout(format_layout(layout)) == layout


@pytest.mark.parametrize("text", ["-1", "a", "2,,3", "1.5", "2;3"])
def test_parse_layout_rejects(text):
    with pytest.raises(ContractViolation):
        parse_layout(text)


@pytest.mark.parametrize("bad", [(-1,), (1.5,), ("2",)])
def test_as_layout_rejects(bad):
    with pytest.raises(ContractViolation):
        as_layout(bad)


def test_partitions_order_and_counts():
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    # p(10) = 42
    assert len(list(partitions(10))) == 42
    assert list(partitions(0)) == [()]
