"""
Exhaustive complete-factorization search over small supersolvable groups that
are not nilpotent.

The report is a record of what the search found; it asserts nothing.  The
clock is disabled and only the node budget applies, so the report is
byte-identical across runs.
"""

from __future__ import annotations

import json

from .catalog import ordered_factorizations, probe_catalog
from .search import SearchProblem, search_complete_factorization
from .structure import is_nilpotent

PROBE_NODE_BUDGET = 2_000_000


def open_question_probe(max_order: int = 24, node_budget: int = PROBE_NODE_BUDGET,
                        min_parts: int = 2) -> list[dict]:
    records = []
    for name, g in probe_catalog(max_order):
        if is_nilpotent(g):
            continue
        for sizes in ordered_factorizations(g.order, min_parts=min_parts):
            problem = SearchProblem(g, sizes, mode="first", node_budget=node_budget, time_budget=None)
            outcome = search_complete_factorization(problem)
            rec = {"group": name, "order": g.order, "sizes": list(sizes)}
            rec.update(outcome.to_json(include_elapsed=False))
            records.append(rec)
    return records


def probe_report(**kwargs) -> str:
    """JSON-lines rendering of :func:`open_question_probe`, keys sorted."""
    return "".join(json.dumps(r, sort_keys=True) + "\n" for r in open_question_probe(**kwargs))
