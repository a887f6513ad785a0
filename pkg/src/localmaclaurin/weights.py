"""Clique polynomials, the sigma-localised weights and the inequality verifiers."""
from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, prod
from typing import Sequence

from .certified import (
    DEFAULT_SCHEDULE,
    TIGHT_TOLERANCE,
    CertifiedValue,
    check_schedule,
    format_fraction,
)
from .graph import (
    Graph,
    GraphError,
    bits,
    clique_number,
    clique_vertices,
    enumerate_cliques,
    encode_graph6,
    maximal_cliques,
    sigma_map,
)


class DomainError(ValueError):
    pass


class PreconditionError(ValueError):
    def __init__(self, message: str, witness: tuple[int, ...] | None = None):
        super().__init__(message)
        self.witness = witness


class Verdict(str, enum.Enum):
    HOLDS = "holds"
    VIOLATION = "violation"
    TIGHT = "tight"
    EQUALITY = "equality"
    INCONCLUSIVE = "inconclusive"

    @property
    def category(self) -> str:
        """Collapse to holds / tight / violated / inconclusive for cross-checks."""
        if self in (Verdict.TIGHT, Verdict.EQUALITY):
            return "tight"
        return {"holds": "holds", "violation": "violated"}.get(self.value, "inconclusive")


def as_weights(G: Graph, x=None) -> tuple[Fraction, ...]:
    """Validate a weight vector for ``G``; ``None`` means all ones."""
    if x is None:
        return (Fraction(1),) * G.n
    x = tuple(Fraction(v) for v in x)
    if len(x) != G.n:
        raise ValueError(f"weight vector has {len(x)} entries, graph has {G.n} vertices")
    for v, xv in enumerate(x):
        if xv < 0:
            raise ValueError(f"negative weight {xv} at vertex {v}")
    return x


def monomial(x: Sequence[Fraction], clique: int) -> Fraction:
    return prod((x[v] for v in bits(clique)), start=Fraction(1))


# -- rho ---------------------------------------------------------------------

def _check_sqt(s: int, q: int, t: int):
    if not 1 <= s <= q:
        raise DomainError(f"need 1 <= s <= q, got s={s}, q={q}")
    if t < q:
        raise DomainError(f"rho is only defined for t >= q (t={t}, q={q})")


@lru_cache(maxsize=None)
def rho(s: int, q: int, t: int, bits: int = DEFAULT_SCHEDULE[-1]) -> CertifiedValue:
    """``C(t,s)^(q/s) / C(t,q)``: exact when it is rational, else an enclosure."""
    _check_sqt(s, q, t)
    return CertifiedValue.root(comb(t, s) ** q, s, bits) / comb(t, q)


def rho_power_exact(s: int, q: int, t: int) -> Fraction:
    """``rho(s,q,t) ** s``, which is always rational."""
    _check_sqt(s, q, t)
    return Fraction(comb(t, s) ** q, comb(t, q) ** s)


# -- polynomials -------------------------------------------------------------

def h_poly(G: Graph, s: int, x=None) -> Fraction:
    """Exact value of the clique polynomial: sum of ``x_J`` over all ``s``-cliques ``J``."""
    x = as_weights(G, x)
    return sum((monomial(x, J) for J in enumerate_cliques(G, s)), Fraction(0))


def sigma_mass(G: Graph, q: int, x=None) -> dict[int, Fraction]:
    """Exact ``sigma value -> sum of x_I`` over ``q``-cliques ``I`` with that sigma."""
    x = as_weights(G, x)
    mass: dict[int, Fraction] = {}
    for clique, t in sigma_map(G, q).items():
        mass[t] = mass.get(t, Fraction(0)) + monomial(x, clique)
    return dict(sorted(mass.items()))


def _combine(s: int, q: int, mass: dict[int, Fraction], bits: int) -> CertifiedValue:
    total = CertifiedValue.exact(0)
    for t, a in mass.items():
        if a:
            total = total + rho(s, q, t, bits) * a
    return total.round_outward(bits + 16)


def f_poly(G: Graph, s: int, q: int, x=None, bits: int = DEFAULT_SCHEDULE[-1]) -> CertifiedValue:
    """Localised weighted clique polynomial.

    q-cliques are first grouped by sigma value so every irrational weight is
    applied once, to an exactly aggregated rational mass.
    """
    if not 1 <= s <= q:
        raise DomainError(f"need 1 <= s <= q, got s={s}, q={q}")
    return _combine(s, q, sigma_mass(G, q, x), bits)


def h_power(h: Fraction, s: int, q: int, bits: int) -> CertifiedValue:
    """``h^(q/s)`` computed as ``(h^q)^(1/s)`` with a single rounding site."""
    return CertifiedValue.root(h**q, s, bits)


# -- reports -----------------------------------------------------------------

@dataclass
class VerificationReport:
    graph: str
    s: int
    q: int
    lhs: CertifiedValue
    rhs: CertifiedValue
    verdict: Verdict
    sigma_histogram: dict[int, int] = field(default_factory=dict)
    width: Fraction | None = None
    structure: dict | None = None
    kind: str = "localised"
    elapsed_ns: int | None = None

    @property
    def gap(self) -> CertifiedValue:
        return self.rhs - self.lhs

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "graph": self.graph,
            "kind": self.kind,
            "s": self.s,
            "q": self.q,
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "verdict": self.verdict.value,
            "sigma_histogram": {str(k): v for k, v in self.sigma_histogram.items()},
        }
        if self.width is not None:
            out["width"] = format_fraction(self.width)
        if self.structure is not None:
            out["structure"] = self.structure
        out["elapsed_ns"] = self.elapsed_ns if timing else None
        return out


def _compare_exact(lhs: Fraction, rhs: Fraction) -> Verdict:
    if lhs < rhs:
        return Verdict.HOLDS
    if lhs == rhs:
        return Verdict.EQUALITY
    return Verdict.VIOLATION


def compare(lhs: CertifiedValue, rhs: CertifiedValue) -> Verdict | None:
    """Certified verdict for ``lhs <= rhs``, or ``None`` while the enclosures overlap."""
    if lhs.is_exact and rhs.is_exact:
        return _compare_exact(lhs.value, rhs.value)
    if lhs.hi < rhs.lo:
        return Verdict.HOLDS
    if lhs.lo > rhs.hi:
        return Verdict.VIOLATION
    return None


def verify_localised(
    G: Graph,
    s: int,
    q: int,
    x=None,
    schedule: Sequence[int] = DEFAULT_SCHEDULE,
    tolerance: Fraction = TIGHT_TOLERANCE,
    diagnose: bool = False,
) -> VerificationReport:
    """Check ``f_{s,q,G}(x) <= h_{s,G}(x)^(q/s)``.

    Exact rationals decide the case ``s | q``. Otherwise enclosures are
    tightened along ``schedule`` until they separate; if they never do, the
    result is TIGHT when the final joint width is at most ``tolerance``
    (relative to ``max(1, rhs)``), and INCONCLUSIVE otherwise.
    """
    start = time.perf_counter_ns()
    if not 1 <= s <= q:
        raise DomainError(f"need 1 <= s <= q, got s={s}, q={q}")
    schedule = check_schedule(schedule)
    x = as_weights(G, x)
    h = h_poly(G, s, x)
    mass = sigma_mass(G, q, x)
    width = None

    if q % s == 0 or not any(mass.values()):
        lhs = _combine(s, q, mass, schedule[-1]) if q % s == 0 else CertifiedValue.exact(0)
        rhs = CertifiedValue.exact(h ** (q // s)) if q % s == 0 else h_power(h, s, q, schedule[-1])
        verdict = compare(lhs, rhs)
        if verdict is None:  # rhs irrational, lhs exactly zero
            verdict = Verdict.HOLDS
    else:
        verdict = None
        for precision in schedule:
            lhs = _combine(s, q, mass, precision)
            rhs = h_power(h, s, q, precision)
            verdict = compare(lhs, rhs)
            if verdict is not None:
                break
        if verdict is None:
            width = max(lhs.hi, rhs.hi) - min(lhs.lo, rhs.lo)
            scale = max(Fraction(1), abs(rhs.hi))
            verdict = Verdict.TIGHT if width <= tolerance * scale else Verdict.INCONCLUSIVE

    report = VerificationReport(
        graph=encode_graph6(G),
        s=s,
        q=q,
        lhs=lhs,
        rhs=rhs,
        verdict=verdict,
        sigma_histogram=_histogram(G, q),
        width=width,
    )
    if diagnose and s < q:
        from .structure import diagnose_equality

        try:
            report.structure = diagnose_equality(G, s, q, x).to_json()
        except DomainError as exc:
            report.structure = {"error": str(exc)}
    report.elapsed_ns = time.perf_counter_ns() - start
    return report


def _histogram(G: Graph, q: int) -> dict[int, int]:
    hist: dict[int, int] = {}
    for t in sigma_map(G, q).values():
        hist[t] = hist.get(t, 0) + 1
    return dict(sorted(hist.items()))


def _require_free(G: Graph, r: int):
    if clique_number(G) > r:
        witness = next(c for c in maximal_cliques(G) if c.bit_count() > r)
        witness = clique_vertices(witness)[: r + 1]
        raise PreconditionError(f"graph contains a K_{r + 1}: {list(witness)}", witness)


def verify_zykov(G: Graph, r: int, q: int) -> VerificationReport:
    """Check ``k_q(G) <= C(r,q) (k_1(G)/r)^q`` for a ``K_{r+1}``-free graph, exactly."""
    start = time.perf_counter_ns()
    if not 1 <= q <= r:
        raise DomainError(f"need 1 <= q <= r, got q={q}, r={r}")
    _require_free(G, r)
    lhs = Fraction(len(enumerate_cliques(G, q)))
    rhs = comb(r, q) * Fraction(G.n, r) ** q
    return VerificationReport(
        graph=encode_graph6(G),
        s=1,
        q=q,
        lhs=CertifiedValue.exact(lhs),
        rhs=CertifiedValue.exact(rhs),
        verdict=_compare_exact(lhs, rhs),
        kind=f"zykov(r={r})",
        elapsed_ns=time.perf_counter_ns() - start,
    )


def verify_chain(G: Graph, r: int, x=None) -> list[VerificationReport]:
    """Check the Maclaurin chain ``(h_s/C(r,s))^(1/s) >= (h_{s+1}/C(r,s+1))^(1/(s+1))``.

    Each link is compared in the exponent-free form
    ``h_{s+1}^s C(r,s)^(s+1) <= h_s^(s+1) C(r,s+1)^s``; the report stores the
    left-hand side of that as ``lhs``.
    """
    if r < 1:
        raise DomainError("r must be >= 1")
    _require_free(G, r)
    x = as_weights(G, x)
    gid = encode_graph6(G)
    hs = [None] + [h_poly(G, s, x) for s in range(1, r + 1)]
    reports = []
    for s in range(1, r):
        start = time.perf_counter_ns()
        small = hs[s + 1] ** s * comb(r, s) ** (s + 1)
        big = hs[s] ** (s + 1) * comb(r, s + 1) ** s
        reports.append(VerificationReport(
            graph=gid,
            s=s,
            q=s + 1,
            lhs=CertifiedValue.exact(small),
            rhs=CertifiedValue.exact(big),
            verdict=_compare_exact(small, big),
            kind=f"chain(r={r})",
            elapsed_ns=time.perf_counter_ns() - start,
        ))
    return reports


__all__ = [
    "DomainError",
    "GraphError",
    "PreconditionError",
    "Verdict",
    "VerificationReport",
    "as_weights",
    "compare",
    "f_poly",
    "h_poly",
    "h_power",
    "rho",
    "rho_power_exact",
    "sigma_mass",
    "verify_chain",
    "verify_localised",
    "verify_zykov",
]
