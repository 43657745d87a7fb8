import itertools
import math

import pytest

from oracles import columns_independent, leibniz_det, span_size
from ringstore.errors import DimensionError, InfeasibleParameters
from ringstore.galois import DataVector, FieldMatrix, mat_rank
from ringstore.scheme import (
    RingParams,
    Scheme,
    SchemeFormatError,
    build_ed_scheme,
    build_mds_scheme,
    node_symbols,
    reconstruct_bound,
    repair_bound,
    validate_ordss,
)


def feasible_grid(max_n=8, max_alpha=4):
    for n in range(1, max_n + 1):
        for alpha in range(1, max_alpha + 1):
            for m in range(1, n * alpha + 1):
                yield n, alpha, m


def test_params_derived():
    p = RingParams(4, 2, 5)
    assert (p.k, p.gamma) == (3, 1)
    assert RingParams(3, 3, 9).gamma == 3


@pytest.mark.parametrize("args,msg", [((2, 2, 5), "n*alpha < M"), ((0, 2, 1), "n must be")])
def test_params_infeasible(args, msg):
    with pytest.raises(InfeasibleParameters, match=msg):
        RingParams(*args)


def test_bounds_reference_instances():
    assert reconstruct_bound(RingParams(5, 2, 5)) == 9
    assert reconstruct_bound(RingParams(4, 2, 5)) == 9
    assert repair_bound(RingParams(4, 2, 5)) == 5
    assert repair_bound(RingParams(5, 2, 5)) == 5


def test_bound_single_node():
    assert reconstruct_bound(RingParams(3, 6, 4)) == 4
    assert repair_bound(RingParams(3, 6, 4)) == 4


def test_bound_alpha_one():
    assert reconstruct_bound(RingParams(3, 1, 3)) == 3 + 2 + 1 == 6


@pytest.mark.parametrize("n,alpha,m", list(feasible_grid(6, 6)))
def test_bound_equals_sum_of_cut_inequalities(n, alpha, m):
    p = RingParams(n, alpha, m)
    assert reconstruct_bound(p) == sum(max(m - j * alpha, 0) for j in range(n))


def test_bound_monotone_in_alpha():
    for m in range(1, 30):
        vals = [reconstruct_bound(RingParams(m, a, m)) for a in range(1, m + 2)]
        assert vals == sorted(vals, reverse=True)


def test_ed_scheme_reference_nodes():
    s = build_ed_scheme(4, 2, 5)
    x = DataVector((1, 0, 1, 1, 0), 2)
    # x1,x2 | x3,x4 | x5,x1+x4 | x2+x5,x3+x4+x5
    assert [n.column_lists() for n in s.node_matrices] == [
        [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0]],
        [[0, 0, 1, 0, 0], [0, 0, 0, 1, 0]],
        [[0, 0, 0, 0, 1], [1, 0, 0, 1, 0]],
        [[0, 1, 0, 0, 1], [0, 0, 1, 1, 1]],
    ]
    assert [v.value for v in node_symbols(s, x, 4)] == [0 ^ 0, 1 ^ 1 ^ 0]


def test_ed_scheme_5_2_5():
    s = build_ed_scheme(5, 2, 5)
    assert s.generator.tolist() == FieldMatrix.hstack([FieldMatrix.identity(5, 2)] * 2).tolist()
    assert s.node_matrix(3).column_lists() == [[0, 0, 0, 0, 1], [1, 0, 0, 0, 0]]


def test_ed_scheme_infeasible():
    with pytest.raises(InfeasibleParameters):
        build_ed_scheme(2, 2, 5)


def test_mds_scheme_small():
    s = build_mds_scheme(2, 2, 3)
    assert s.params.q == 5
    assert s.generator.tolist() == [[1, 1, 1, 1], [0, 1, 2, 3], [0, 1, 4, 4]]
    for trip in itertools.combinations(range(4), 3):
        sub = [[row[c] for c in trip] for row in s.generator.tolist()]
        assert leibniz_det(sub, 5) != 0


def test_mds_scheme_single_node():
    s = build_mds_scheme(1, 4, 4)
    assert mat_rank(s.generator) == 4
    assert validate_ordss(s).is_ordss


def test_mds_scheme_infeasible():
    with pytest.raises(InfeasibleParameters):
        build_mds_scheme(2, 2, 5)


@pytest.mark.parametrize(
    "n,alpha,m", [(n, a, m) for n, a, m in feasible_grid(6, 4) if n * a <= 12]
)
def test_mds_every_subset_full_rank(n, alpha, m):
    s = build_mds_scheme(n, alpha, m)
    g = s.generator.tolist()
    pts = g[1] if m > 1 else None
    for subset in itertools.combinations(range(n * alpha), m):
        if pts is not None:
            # Vandermonde determinant = prod of point differences
            prod = math.prod(pts[j] - pts[i] for i, j in itertools.combinations(subset, 2))
            assert prod % s.params.q != 0
        assert mat_rank(s.generator.select_columns([c + 1 for c in subset])) == m
    if m <= 5:
        for subset in itertools.combinations(range(n * alpha), m):
            assert leibniz_det([[row[c] for c in subset] for row in g], s.params.q) != 0


def test_validate_ed_4_2_5():
    r = validate_ordss(build_ed_scheme(4, 2, 5))
    assert r.condition_i_ok and r.condition_ii_ok and r.failing_window is None


def test_validate_duplicate_column():
    e = lambda i: [int(j == i) for j in range(1, 5)]  # noqa: E731
    s = Scheme.from_nodes([[e(1), e(1)], [e(2), e(3)], [e(4), e(1)]])
    r = validate_ordss(s)
    assert not r.condition_i_ok
    assert r.failing_window == 1
    assert not r


def test_validate_ed_5_2_5_against_enumeration():
    s = build_ed_scheme(5, 2, 5)
    cols = s.generator.column_lists()
    for start in range(5):
        four = [cols[(2 * start + j) % 10] for j in range(4)]
        six = [cols[(2 * start + j) % 10] for j in range(6)]
        assert columns_independent(four, 2)
        assert span_size(six, 2) == 2**5
    assert validate_ordss(s).is_ordss


@pytest.mark.parametrize("n,alpha,m", list(feasible_grid()))
def test_constructions_are_ordss(n, alpha, m):
    for build in (build_ed_scheme, build_mds_scheme):
        s = build(n, alpha, m)
        assert validate_ordss(s).is_ordss, (build.__name__, n, alpha, m)
        assert mat_rank(s.generator) == m


def test_node_symbols_identity_prefix():
    s = build_ed_scheme(3, 2, 4)
    x = DataVector((1, 1, 0, 1), 2)
    assert [v.value for v in node_symbols(s, x, 1)] == [1, 1]


def test_node_symbols_bad_length():
    s = build_ed_scheme(4, 2, 5)
    with pytest.raises(DimensionError):
        node_symbols(s, DataVector((1, 0), 2), 1)
    with pytest.raises(IndexError):
        node_symbols(s, DataVector((1, 0, 0, 0, 0), 2), 5)


def test_scheme_rejects_rank_deficient_generator():
    with pytest.raises(DimensionError):
        Scheme(RingParams(2, 1, 2), FieldMatrix([[1, 1], [0, 0]], 2))


def test_json_round_trip_is_byte_stable():
    for s in (build_ed_scheme(4, 2, 5), build_mds_scheme(3, 2, 4)):
        text = s.to_json()
        back = Scheme.from_json(text)
        assert back == s
        assert back.to_json() == text


def test_json_layout():
    s = build_ed_scheme(2, 1, 2)
    assert s.to_json() == '{"q": 2, "n": 2, "alpha": 1, "m_size": 2, "generator": [[1, 0], [0, 1]]}\n'


@pytest.mark.parametrize(
    "text",
    [
        "not json",
        "[1, 2]",
        '{"q": 2, "n": 2}',
        '{"q": 2, "n": 2, "alpha": 1, "m_size": 2, "generator": [[1, 0], [0]]}',
        '{"q": 2, "n": 2, "alpha": 1, "m_size": 2, "generator": [[1.5, 0], [0, 1]]}',
    ],
)
def test_json_malformed(text):
    with pytest.raises(SchemeFormatError):
        Scheme.from_json(text)
