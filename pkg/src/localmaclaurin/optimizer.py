"""Maximising ``f_{s,q,G}`` on the surface ``h_{s,G} = 1``.

Points on the surface are stored as an exact rational direction plus a scale
factor, because normalising a rational vector generally needs an ``s``-th root.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb
import numpy as np

from .certified import DEFAULT_SCHEDULE, CertifiedValue, format_fraction
from .graph import (
    Graph,
    bits,
    clique_number,
    enumerate_cliques,
    maximal_cliques,
    sigma_map,
    to_mask,
)
from .weights import DomainError, as_weights, f_poly, h_poly, monomial, rho

logger = logging.getLogger(__name__)


class NoCliqueError(DomainError):
    pass


class ShiftError(ValueError):
    pass


@dataclass(frozen=True)
class SimplexPoint:
    """The point ``scale * direction`` with ``h_s(direction) * scale^s == 1``."""

    direction: tuple[Fraction, ...]
    s: int
    scale: CertifiedValue

    @property
    def is_exact(self) -> bool:
        return self.scale.is_exact

    @property
    def x(self) -> tuple[Fraction, ...]:
        """Exact coordinates; only available when the scale is rational."""
        c = self.scale.value
        return tuple(c * v for v in self.direction)

    @property
    def support(self) -> int:
        return to_mask(v for v, xv in enumerate(self.direction) if xv)

    def approx(self) -> np.ndarray:
        return float(self.scale) * np.array([float(v) for v in self.direction])

    def to_json(self) -> dict:
        if self.is_exact:
            return {"x": [format_fraction(v) for v in self.x]}
        return {"direction": [format_fraction(v) for v in self.direction],
                "scale": self.scale.to_json()}


@dataclass(frozen=True)
class ShiftOutcome:
    y: SimplexPoint
    xi_u: Fraction
    xi_v: Fraction
    f_before: CertifiedValue
    f_after: CertifiedValue

    @property
    def f_preserved(self) -> bool:
        if self.f_before.is_exact and self.f_after.is_exact:
            return self.f_before.value == self.f_after.value
        return self.f_before.overlaps(self.f_after)


@dataclass(frozen=True)
class OptimizationResult:
    best: CertifiedValue
    argmax: SimplexPoint
    support: int
    iterations: int
    converged: bool

    def to_json(self) -> dict:
        out = {"M": self.best.to_json(), "support": list(bits(self.support))}
        out.update(self.argmax.to_json())
        out["iterations"] = self.iterations
        out["converged"] = self.converged
        return out


def normalize(G: Graph, s: int, x, bits_: int = DEFAULT_SCHEDULE[-1]) -> SimplexPoint:
    """Rescale ``x`` onto ``h_s = 1``; exact whenever ``h_s(x)`` is an ``s``-th power."""
    x = as_weights(G, x)
    h = h_poly(G, s, x)
    if h == 0:
        raise DomainError("no s-clique mass: h_s(x) = 0")
    return SimplexPoint(x, s, CertifiedValue.root(1 / h, s, bits_))


def point_on_surface(G: Graph, s: int, x, pivot: int | None = None) -> SimplexPoint:
    """Exact rational point on ``h_s = 1`` obtained by re-solving one coordinate.

    ``h_s`` is affine in each single coordinate, so after shrinking ``x`` until
    the remaining mass is below 1, the pivot coordinate is chosen to close the
    gap. The pivot defaults to the first support vertex with a positive
    partial derivative.
    """
    x = list(as_weights(G, x))
    if h_poly(G, s, x) == 0:
        raise DomainError("no s-clique mass: h_s(x) = 0")
    candidates = [pivot] if pivot is not None else range(G.n)
    for w in candidates:
        if x[w] > 0 and partial_h(G, s, x, w) > 0:
            break
    else:
        raise DomainError("no usable pivot coordinate")
    while True:
        base = list(x)
        base[w] = Fraction(0)
        rest = h_poly(G, s, base)
        if rest < 1:
            break
        x = [v / 2 for v in x]
    slope = partial_h(G, s, base, w)
    base[w] = (1 - rest) / slope
    point = tuple(base)
    assert h_poly(G, s, point) == 1
    return SimplexPoint(point, s, CertifiedValue.exact(1))


def partial_h(G: Graph, s: int, x, w: int) -> Fraction:
    """Exact partial derivative of ``h_s`` in the coordinate ``w``."""
    x = as_weights(G, x)
    if s == 1:
        return Fraction(1)
    total = Fraction(0)
    for J in enumerate_cliques(G, s):
        if J >> w & 1:
            total += monomial(x, J & ~(1 << w))
    return total


def value(G: Graph, s: int, q: int, point: SimplexPoint, bits_: int = DEFAULT_SCHEDULE[-1]) -> CertifiedValue:
    """``f_{s,q,G}`` at a surface point, computed as ``scale^q * f(direction)``."""
    f = f_poly(G, s, q, point.direction, bits_)
    if point.is_exact:
        return f * point.scale.value ** q
    if q % s == 0 and f.is_exact:
        # scale^s = 1/h_s(direction), so scale^q is rational here
        return f * (1 / h_poly(G, s, point.direction)) ** (q // s)
    return (f * point.scale ** q).round_outward(bits_ + 16)


def symmetrize_shift(G: Graph, s: int, q: int, point: SimplexPoint, u: int, v: int,
                     bits_: int = DEFAULT_SCHEDULE[-1]) -> ShiftOutcome:
    """Move all weight from ``u`` onto the non-neighbour ``v`` keeping ``h_s`` fixed.

    The increment on ``v`` is ``x_u * dh/dx_u / dh/dx_v``. Because no clique
    contains both ``u`` and ``v``, ``h_s`` is affine along this move and is
    preserved exactly. ``f`` is only guaranteed to stay put at a maximiser;
    both values are reported and left for the caller to judge.
    """
    if u == v:
        raise ShiftError("u and v must differ")
    if G.has_edge(u, v):
        raise ShiftError(f"vertices {u} and {v} are adjacent")
    x = point.direction
    f_before = value(G, s, q, point, bits_)
    if x[u] == 0:
        return ShiftOutcome(point, Fraction(0), Fraction(0), f_before, f_before)
    du = partial_h(G, s, x, u)
    dv = partial_h(G, s, x, v)
    if dv == 0:
        raise ShiftError(f"vertex {v} lies in no s-clique of the support")
    xi_u = -x[u]
    xi_v = x[u] * du / dv
    y = list(x)
    y[u] = Fraction(0)
    y[v] = x[v] + xi_v
    h_x = h_poly(G, s, x)
    if h_poly(G, s, y) != h_x:
        raise AssertionError("h_s not preserved by the shift")
    new_point = SimplexPoint(tuple(y), s, point.scale)
    # returned xi values are in surface coordinates, hence scaled like the point
    if point.is_exact:
        c = point.scale.value
        xi_u, xi_v = xi_u * c, xi_v * c
    return ShiftOutcome(new_point, xi_u, xi_v, f_before, value(G, s, q, new_point, bits_))


def _float_polys(G: Graph, s: int, q: int):
    f_terms = [(list(bits(I)), float(rho(s, q, t))) for I, t in sigma_map(G, q).items()]
    h_terms = [list(bits(J)) for J in enumerate_cliques(G, s)]
    return f_terms, h_terms


def _grad(terms, x: np.ndarray, weights=None):
    n = len(x)
    total = 0.0
    grad = np.zeros(n)
    for k, idx in enumerate(terms):
        w = 1.0 if weights is None else weights[k]
        vals = x[idx]
        total += w * vals.prod()
        for j, v in enumerate(idx):
            grad[v] += w * np.prod(np.delete(vals, j))
    return total, grad


def criticality_residual(G: Graph, s: int, q: int, x) -> float:
    """``max |df/dx_w - lam dh/dx_w|`` over the support, ``lam`` fitted by least squares."""
    xv = np.array([float(v) for v in as_weights(G, x)])
    f_terms, h_terms = _float_polys(G, s, q)
    _, gf = _grad([t[0] for t in f_terms], xv, [t[1] for t in f_terms])
    _, gh = _grad(h_terms, xv)
    sup = xv > 0
    if not sup.any():
        return 0.0
    a, b = gh[sup], gf[sup]
    denom = float(a @ a)
    lam = float(a @ b) / denom if denom else 0.0
    return float(np.max(np.abs(b - lam * a)))


def descend_support(G: Graph, s: int, q: int, point: SimplexPoint,
                    require_critical: bool = False, tol: float = 1e-9,
                    bits_: int = DEFAULT_SCHEDULE[-1]) -> SimplexPoint:
    """Shift weight across non-edges inside the support until the support is a clique.

    ``f`` is affine along each shift, so of the two directions (empty ``u`` or
    empty ``v``) at least one does not decrease it; that one is taken. A
    support vertex lying in no ``s``-clique of the support contributes to
    neither polynomial and is simply dropped.
    """
    if require_critical:
        residual = criticality_residual(G, s, q, point.direction)
        if residual > tol:
            raise ShiftError(f"point is not critical (residual {residual:.3g})")
    while True:
        support = point.support
        pair = None
        for u in bits(support):
            others = support & ~G.adj[u] & ~((2 << u) - 1)
            if others:
                pair = (u, (others & -others).bit_length() - 1)
                break
        if pair is None:
            return point
        u, v = pair
        x = point.direction
        du, dv = partial_h(G, s, x, u), partial_h(G, s, x, v)
        if du == 0 or dv == 0:
            dead = u if du == 0 else v
            y = list(x)
            y[dead] = Fraction(0)
            logger.debug("dropping vertex %d: in no s-clique of the support", dead)
            point = SimplexPoint(tuple(y), s, point.scale)
            continue
        first = symmetrize_shift(G, s, q, point, u, v, bits_)
        second = symmetrize_shift(G, s, q, point, v, u, bits_)
        point = first.y if first.f_after.mid >= second.f_after.mid else second.y


def _ascend(f_idx, f_w, h_idx, s: int, q: int, x: np.ndarray, max_iter: int, tol: float):
    """Multiplicative fixed-point ascent of ``f`` on ``h_s = 1``."""
    def renorm(x):
        h, _ = _grad(h_idx, x)
        return x / h ** (1.0 / s)

    x = renorm(x)
    f, _ = _grad(f_idx, x, f_w)
    for it in range(1, max_iter + 1):
        f, gf = _grad(f_idx, x, f_w)
        h, gh = _grad(h_idx, x)
        lam = q * f / (s * h)
        ratio = np.where(gh > 0, gf / np.where(gh > 0, lam * gh, 1.0), 1.0)
        y = renorm(x * np.sqrt(np.maximum(ratio, 0.0)))
        f_new, _ = _grad(f_idx, y, f_w)
        if f_new < f:
            return x, f, it, True
        x = y
        if f_new - f <= tol * abs(f):
            return x, f_new, it, True
    return x, f, max_iter, False


def _to_rational(values: np.ndarray, max_denominator: int = 10**12) -> tuple[Fraction, ...]:
    return tuple(Fraction(float(v)).limit_denominator(max_denominator) if v > 0 else Fraction(0)
                 for v in values)


def maximize(G: Graph, s: int, q: int, max_iter: int = 10_000, tol: float = 1e-12,
             bits_: int = DEFAULT_SCHEDULE[-1]) -> OptimizationResult:
    """Maximise ``f_{s,q,G}`` over ``h_s = 1``.

    Some maximiser is supported on a clique, so the search runs over maximal
    cliques in lexicographic order: each is seeded with its uniform point and
    then refined by ascent restricted to that clique. Candidates replace the
    incumbent only on a strict improvement, which keeps ties deterministic.
    """
    if not 1 <= s <= q:
        raise DomainError(f"need 1 <= s <= q, got s={s}, q={q}")
    if q > clique_number(G):
        raise NoCliqueError(f"no q-clique: q={q} exceeds the clique number {clique_number(G)}")
    sig = sigma_map(G, q)
    best = None
    total_iter = 0
    converged = True
    for R in maximal_cliques(G):
        size = R.bit_count()
        if size < q:
            continue
        verts = list(bits(R))
        uniform = tuple(Fraction(1) if (R >> v) & 1 else Fraction(0) for v in range(G.n))
        candidate = SimplexPoint(uniform, s, CertifiedValue.root(Fraction(1, comb(size, s)), s, bits_))
        cand_val = value(G, s, q, candidate, bits_)
        if best is None or cand_val.mid > best[0].mid + tol:
            best = (cand_val, candidate)

        local = {v: i for i, v in enumerate(verts)}
        f_idx, f_w = [], []
        for I in itertools.combinations(verts, q):
            f_idx.append([local[v] for v in I])
            f_w.append(float(rho(s, q, sig[to_mask(I)], bits_)))
        h_idx = [[local[v] for v in J] for J in itertools.combinations(verts, s)]
        start = np.ones(size) + 0.01 * np.arange(size) / size
        xr, _, iters, ok = _ascend(f_idx, f_w, h_idx, s, q, start, max_iter, tol)
        total_iter += iters
        converged &= ok
        direction = [Fraction(0)] * G.n
        for v, val in zip(verts, _to_rational(xr)):
            direction[v] = val
        if any(direction):
            refined = normalize(G, s, direction, bits_)
            ref_val = value(G, s, q, refined, bits_)
            if ref_val.mid > best[0].mid + tol:
                best = (ref_val, refined)
    val, point = best
    return OptimizationResult(val, point, point.support, total_iter, converged)


def uniform_clique_value(G: Graph, s: int, q: int, clique: int,
                         bits_: int = DEFAULT_SCHEDULE[-1]) -> CertifiedValue:
    """``f`` at the uniform surface point supported on ``clique``."""
    size = clique.bit_count()
    direction = tuple(Fraction(1) if (clique >> v) & 1 else Fraction(0) for v in range(G.n))
    point = SimplexPoint(direction, s, CertifiedValue.root(Fraction(1, comb(size, s)), s, bits_))
    return value(G, s, q, point, bits_)
