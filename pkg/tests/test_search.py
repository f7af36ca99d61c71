import json

import pytest

from nilfactor import errors
from nilfactor.catalog import ordered_factorizations
from nilfactor.factorize import verify_complete_factorization
from nilfactor.group import (
    make_abelian,
    make_cyclic,
    make_dihedral,
    make_heisenberg,
    make_quaternion,
)
from nilfactor.search import (
    SearchProblem,
    Status,
    cross_check,
    search_complete_factorization,
)

from conftest import count_complete_factorizations


def run(g, sizes, **kw):
    kw.setdefault("time_budget", None)
    return search_complete_factorization(SearchProblem(g, sizes, **kw))


def test_z4_two_blocks_exhausted():
    out = run(make_cyclic(4), (2, 2), mode="count")
    assert out.status is Status.EXHAUSTED and out.count == 0 and out.witness is None


def test_z8_three_blocks_found():
    g = make_cyclic(8)
    out = run(g, (2, 2, 2))
    assert out.status is Status.FOUND
    assert verify_complete_factorization(g, out.witness.blocks).passed


def test_sizes_mismatch():
    with pytest.raises(errors.SizesMismatch):
        SearchProblem(make_cyclic(8), (2, 2))
    with pytest.raises(ValueError):
        SearchProblem(make_cyclic(8), (2, 4), mode="all")


def test_unit_blocks_allowed():
    g = make_cyclic(6)
    out = run(g, (1, 6), mode="count")
    # A_2 would have to be all of G and so would meet A_1
    assert out.count == count_complete_factorizations(g, (1, 6)) == 0
    assert run(make_cyclic(1), (1,), mode="count").count == 1


def test_dihedral_probe_datum():
    out = run(make_dihedral(6), (2, 2, 3), node_budget=10 ** 6)
    assert out.status in (Status.FOUND, Status.EXHAUSTED)
    if out.found:
        assert verify_complete_factorization(make_dihedral(6), out.witness.blocks).passed


SMALL = [
    (make_cyclic(4), "Z4"),
    (make_abelian([2, 2]), "V4"),
    (make_cyclic(6), "Z6"),
    (make_dihedral(3), "S3"),
    (make_cyclic(8), "Z8"),
    (make_abelian([2, 2, 2]), "Z2^3"),
    (make_quaternion(), "Q8"),
    (make_dihedral(4), "D4"),
]


@pytest.mark.parametrize("g,name", SMALL, ids=[s[1] for s in SMALL])
def test_count_matches_enumeration(g, name):
    for sizes in ordered_factorizations(g.order):
        out = run(g, sizes, mode="count")
        assert out.count == count_complete_factorizations(g, sizes), sizes
        assert (out.status is Status.FOUND) == (out.count > 0)


@pytest.mark.parametrize("g", [make_cyclic(12), make_dihedral(6), make_heisenberg(2)])
def test_canonicalization_keeps_status(g):
    for sizes in ordered_factorizations(g.order):
        on = run(g, sizes, mode="exists", canonicalize=True)
        off = run(g, sizes, mode="exists", canonicalize=False)
        assert on.status == off.status


def test_budget_exceeded_then_found_with_more():
    g = make_abelian([4, 4])
    small = run(g, (4, 4), mode="count", node_budget=50)
    assert small.status is Status.BUDGET_EXCEEDED
    g = make_cyclic(24)
    statuses = [run(g, (2, 3, 4), node_budget=b).status for b in (1, 3, 10, 100, 10 ** 6)]
    seen_found = False
    for s in statuses:
        if s is Status.FOUND:
            seen_found = True
        else:
            assert not seen_found and s is Status.BUDGET_EXCEEDED
    assert statuses[-1] is Status.FOUND


def test_time_budget_enforced():
    g = make_abelian([2, 2, 2, 2])
    out = run(g, (4, 4), mode="count", time_budget=0.0)
    assert out.status in (Status.BUDGET_EXCEEDED, Status.EXHAUSTED)


def test_deterministic_node_counts():
    g = make_dihedral(9)
    a = run(g, (2, 3, 3))
    b = run(g, (2, 3, 3))
    assert a.nodes == b.nodes
    assert a.witness.blocks == b.witness.blocks


def test_parallel_matches_sequential():
    g = make_cyclic(12)
    for sizes, mode in [((2, 6), "count"), ((3, 4), "count"), ((2, 2, 3), "first")]:
        seq = search_complete_factorization(SearchProblem(g, sizes, mode=mode, time_budget=None))
        par = search_complete_factorization(SearchProblem(g, sizes, mode=mode, time_budget=None), threads=2)
        assert par.status == seq.status
        assert par.count == seq.count
        if mode == "first":
            assert par.witness.blocks == seq.witness.blocks


def test_outcome_json():
    out = run(make_cyclic(8), (2, 2, 2), mode="first")
    doc = json.loads(json.dumps(out.to_json()))
    assert doc["status"] == "found" and len(doc["witness"]) == 3 and "elapsed" in doc
    assert "elapsed" not in out.to_json(include_elapsed=False)


@pytest.mark.parametrize("g,sizes", [
    (make_abelian([2, 2, 2]), (2, 2, 2)),
    (make_cyclic(12), (2, 2, 3)),
    (make_heisenberg(2), (2, 2, 2)),
])
def test_cross_check_examples(g, sizes):
    assert cross_check(g, sizes)


def test_cross_check_propagates_construct_errors():
    with pytest.raises(errors.KTooSmall):
        cross_check(make_cyclic(8), (2, 4))
