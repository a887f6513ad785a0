"""Brute-force reference implementations and exhaustive corpus surveys.

The reference paths here deliberately avoid the bitset clique search and the
rational interval code of the main modules: cliques come from plain subset
enumeration and the irrational comparison runs in ``mpmath`` interval
arithmetic at four times the main working precision.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from math import comb
from typing import Iterable, Iterator

import mpmath

from .certified import DEFAULT_SCHEDULE
from .graph import Graph, GraphError, bits, clique_number, parse_graph6
from .structure import diagnose_equality
from .weights import Verdict, verify_localised

logger = logging.getLogger(__name__)

BRUTE_LIMIT = 20


def _is_clique(G: Graph, verts) -> bool:
    return all(G.has_edge(a, b) for a, b in itertools.combinations(verts, 2))


def brute_sigma(G: Graph, clique) -> int:
    """Largest clique containing ``clique``, by trying every superset."""
    if G.n > BRUTE_LIMIT:
        raise ValueError(f"brute force limited to {BRUTE_LIMIT} vertices")
    base = set(bits(clique)) if isinstance(clique, int) else set(clique)
    if not _is_clique(G, sorted(base)):
        raise GraphError(f"{sorted(base)} is not a clique")
    rest = [v for v in range(G.n) if v not in base]
    for extra in range(len(rest), -1, -1):
        for add in itertools.combinations(rest, extra):
            if _is_clique(G, sorted(base.union(add))):
                return len(base) + extra
    return len(base)


def brute_cliques(G: Graph, k: int) -> list[tuple[int, ...]]:
    return [c for c in itertools.combinations(range(G.n), k) if _is_clique(G, c)]


def brute_verify(G: Graph, s: int, q: int, precision: int | None = None) -> str:
    """Category (``holds``/``tight``/``violated``) of the inequality at ``x = 1``.

    Evaluated independently of the main verifier, via subset enumeration and
    ``mpmath.iv`` enclosures.
    """
    if G.n > 10:
        raise ValueError("brute_verify is limited to 10 vertices")
    prec = precision or 4 * DEFAULT_SCHEDULE[-1]
    ctx = mpmath.iv
    old = ctx.prec
    ctx.prec = prec
    try:
        lhs = ctx.mpf(0)
        for clique in brute_cliques(G, q):
            t = brute_sigma(G, clique)
            lhs += ctx.mpf(comb(t, s)) ** (ctx.mpf(q) / s) / comb(t, q)
        k_s = len(brute_cliques(G, s))
        rhs = ctx.mpf(k_s) ** (ctx.mpf(q) / s)
        if lhs.b < rhs.a:
            return "holds"
        if lhs.a > rhs.b:
            return "violated"
        return "tight"
    finally:
        ctx.prec = old


@dataclass
class SurveyRecord:
    graph6: str
    n: int
    s: int
    q: int
    verdict: str
    tight: bool
    predicted_tight: bool
    discrepancy: bool
    error: str | None = None

    def to_json(self) -> dict:
        return asdict(self)


CSV_COLUMNS = ("graph6", "n", "s", "q", "verdict", "tight", "predicted_tight", "discrepancy")


def pairs_for(omega: int, policy: str = "all") -> list[tuple[int, int]]:
    """``(s, q)`` pairs with ``1 <= s <= q <= omega``, filtered by policy.

    Policies: ``all``, ``strict`` (s < q), ``divisible`` (s | q),
    ``nondivisible`` (s does not divide q), or an explicit ``"s:q"`` pair.
    """
    pairs = [(s, q) for q in range(1, omega + 1) for s in range(1, q + 1)]
    if policy == "all":
        return pairs
    if policy == "strict":
        return [(s, q) for s, q in pairs if s < q]
    if policy == "divisible":
        return [(s, q) for s, q in pairs if q % s == 0]
    if policy == "nondivisible":
        return [(s, q) for s, q in pairs if q % s]
    if ":" in policy:
        s, q = (int(t) for t in policy.split(":"))
        return [(s, q)] if q <= omega else []
    raise ValueError(f"unknown s-q policy {policy!r}")


def survey_graph(text: str, policy: str = "all", schedule=DEFAULT_SCHEDULE) -> list[SurveyRecord]:
    """Records for every admissible ``(s, q)`` of one graph6 line at ``x = 1``."""
    try:
        G = parse_graph6(text)
    except GraphError as exc:
        return [SurveyRecord(text.strip(), -1, 0, 0, "error", False, False, False, str(exc))]
    out = []
    for s, q in pairs_for(clique_number(G), policy):
        report = verify_localised(G, s, q, None, schedule)
        tight = report.verdict.category == "tight"
        if s == q:
            predicted = True
        else:
            predicted = diagnose_equality(G, s, q).predicts_tight
        out.append(SurveyRecord(text.strip(), G.n, s, q, report.verdict.value, tight, predicted,
                                tight != predicted))
    return out


def _survey_item(args):
    return survey_graph(*args)


def read_corpus(lines: Iterable[str]) -> Iterator[str]:
    for line in lines:
        line = line.strip()
        if line and not line.startswith("#"):
            yield line


def survey(corpus: Iterable[str], policy: str = "all", jobs: int = 1,
           schedule=DEFAULT_SCHEDULE) -> Iterator[SurveyRecord]:
    """Stream survey records in corpus order; parse errors become error records.

    With ``jobs > 1`` graphs are farmed out to worker processes and the
    results re-sequenced by input position.
    """
    lines = list(read_corpus(corpus))
    schedule = tuple(schedule)
    if jobs <= 1:
        for line in lines:
            yield from survey_graph(line, policy, schedule)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for records in pool.map(_survey_item, [(line, policy, schedule) for line in lines],
                                chunksize=8):
            yield from records


def summarize(records: Iterable[SurveyRecord]) -> dict:
    counts = {v.value: 0 for v in Verdict}
    summary = {"graphs": 0, "records": 0, "errors": 0, "discrepancies": 0, "tight": 0,
               "verdicts": counts}
    seen = set()
    for r in records:
        if r.error:
            summary["errors"] += 1
            continue
        seen.add(r.graph6)
        summary["records"] += 1
        counts[r.verdict] += 1
        summary["tight"] += r.tight
        summary["discrepancies"] += r.discrepancy
    summary["graphs"] = len(seen)
    return summary


def write_jsonl(records: Iterable[SurveyRecord], stream) -> None:
    for r in records:
        stream.write(json.dumps(r.to_json(), sort_keys=True) + "\n")


def write_csv(records: Iterable[SurveyRecord], stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        if r.error:
            continue
        writer.writerow([r.graph6, r.n, r.s, r.q, r.verdict, int(r.tight),
                         int(r.predicted_tight), int(r.discrepancy)])


def records_to_csv(records: Iterable[SurveyRecord]) -> str:
    buf = io.StringIO()
    write_csv(records, buf)
    return buf.getvalue()
