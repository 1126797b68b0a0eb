"""The quartic and elliptic-curve search methods, and the round-trip diagnostic."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .ecurve import (
    Combination,
    GeneratorSet,
    curve_to_quartic_Xs,
    enumerate_combinations,
    quartic_to_curve,
)
from .exactmath import FactorizationTooHard, Rational, as_fraction, factorize, rational_sqrt_exact
from .quadform import BinaryConic, ChartViolation, ParameterAtInfinity, apply_transform, pqrs_from_solution
from .quartic import (
    BinaryQuartic,
    QuarticPoint,
    QuarticTransform,
    build_conic_quartic,
    minimize_quartic,
    reduce_quartic,
    search_points,
)
from .sieve import TValue, conics_for, factor_hints, sieve_t
from .solutions import Solution, Verdict, canonical, from_rationals, permutations_with_t, t_of, t_orbit, verify_solution

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuarticModel:
    """Everything needed to move between quartic points and solutions for one t.

    ``quartic`` is the raw quartic in the conic slope k; ``reduced`` is its
    minimized and reduced form, related by ``transform``.
    """

    t: Fraction
    quadric_order: str
    conic: BinaryConic
    target: BinaryConic
    base: tuple[int, int, int]
    quartic: BinaryQuartic
    reduced: BinaryQuartic
    transform: QuarticTransform

    def to_slope(self, pt: QuarticPoint) -> Fraction | None:
        """Slope k of a reduced-model point; None is the slope at infinity."""
        return self.transform.pull_back(pt, self.reduced).X

    def from_slope(self, k: Fraction | None) -> Fraction | None:
        """Inverse of :meth:`to_slope` on X-coordinates (None = infinity)."""
        tr = self.transform
        if k is None:
            return None if tr.c == 0 else Fraction(-tr.d, tr.c)
        den = tr.a - tr.c * k
        return None if den == 0 else (tr.d * k - tr.b) / den

    def pqrs(self, k: Fraction | None) -> tuple[Fraction, ...] | None:
        if k is None:
            p, q = Fraction(self.base[0]), Fraction(self.base[1])
        else:
            try:
                p, q = self.conic.parameterize(self.base, k)
            except ParameterAtInfinity:
                return None
        z = self.conic.z_of(p, q)
        w = self.target.z_of(p, q)
        if z is None or w is None:
            return None
        r, s = (z, w) if self.quadric_order == "rs" else (w, z)
        return (p, q, r, s)

    def lift(self, k: Fraction | None) -> Solution | None:
        """Solution attached to slope k, or None if it is degenerate."""
        w = self.pqrs(k)
        if w is None:
            return None
        quad = from_rationals(apply_transform(w, "D"))
        if verify_solution(*quad) is not Verdict.VALID:
            return None
        return Solution(*canonical(quad))


def minimization_primes(t: Fraction, base: Sequence[int]) -> list[int]:
    m, n = t.numerator, t.denominator
    primes: set[int] = set()
    for x in (2, 3, m, n, m * m + n * n, base[1]):
        if x:
            try:
                primes.update(factorize(x))
            except FactorizationTooHard:
                log.warning("skipping minimization at the primes of %s", x)
    return sorted(primes)


def build_model(t: Rational | TValue, quadric_order: str = "rs") -> QuarticModel | None:
    """Quartic model for t, or None when the parameterized conic has no point."""
    tv = t.value if isinstance(t, TValue) else as_fraction(t)
    conic, target = conics_for(tv, quadric_order)
    base = conic.base_point()
    if base is None:
        return None
    quartic = build_conic_quartic(conic, base, target)
    minimized, tr1 = minimize_quartic(quartic, minimization_primes(tv, base))
    reduced, tr2 = reduce_quartic(minimized)
    return QuarticModel(tv, quadric_order, conic, target, tuple(base), quartic, reduced, tr1.compose(tr2))


def search_quartic_method(
    t: TValue,
    height: int,
    workers: int = 1,
    quadric_order: str = "rs",
) -> list[Solution]:
    """Canonical solutions from quartic points of height <= ``height`` on the reduced model.

    Values of t rejected by the sieve give an empty list without searching.
    """
    if not sieve_t(t, quadric_order=quadric_order).passed:
        return []
    model = build_model(t, quadric_order)
    if model is None:
        return []
    found: set[Solution] = set()
    for pt in search_points(model.reduced, height, workers=workers):
        sol = model.lift(model.to_slope(pt))
        if sol is not None:
            assert t.value in t_orbit(sol.as_tuple())
            found.add(sol)
    return sorted(found)


def curve_method_hits(
    t: TValue | Rational,
    gens: GeneratorSet,
    quadric_order: str = "rs",
) -> Iterator[tuple[Combination, Solution]]:
    """(combination, solution) pairs in enumeration order."""
    model = build_model(t, quadric_order)
    if model is None:
        return
    q = model.reduced
    for comb in enumerate_combinations(gens):
        pt = comb.point
        if pt.u == 0 and pt.v == 0:
            continue
        emitted: set[Solution] = set()
        for x in curve_to_quartic_Xs(q, pt, model.t):
            y = rational_sqrt_exact(q(x))
            if y is None:
                continue
            sol = model.lift(model.to_slope(QuarticPoint(x, y)))
            if sol is not None and sol not in emitted:
                emitted.add(sol)
                yield comb, sol


def search_curve_method(t: TValue | Rational, gens: GeneratorSet, quadric_order: str = "rs") -> list[Solution]:
    return sorted({sol for _, sol in curve_method_hits(t, gens, quadric_order)})


def slope_height(sol: Sequence[int], t: Rational, model: QuarticModel | None = None) -> int | None:
    """Smallest height, on the reduced model, of a point producing ``sol`` at t."""
    t = as_fraction(t)
    model = model or build_model(t)
    if model is None:
        return None
    best = None
    for perm in permutations_with_t(sol, t):
        try:
            p, q, r, s = pqrs_from_solution(perm, "D")
        except ChartViolation:
            continue
        z = r if model.quadric_order == "rs" else s
        k = model.conic.slope(model.base, p, q, z)
        x = model.from_slope(k)
        if x is None:
            continue
        h = max(abs(x.numerator), x.denominator)
        best = h if best is None else min(best, h)
    return best


# ---------------------------------------------------------------------------
# round trip
# ---------------------------------------------------------------------------

def _fmt(x: Fraction | None) -> str | None:
    if x is None:
        return None
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def roundtrip(sol: Sequence[int]) -> list[dict]:
    """Forward and back maps for every ordering of ``sol`` with c + d != 0.

    Each entry follows one permutation through (p, q, r, s), the two conics,
    the slope k, the quartic point, its image on E_t and the X-values
    recovered from that image; ``ok`` is True when every stage verified.
    """
    if verify_solution(*sol) is not Verdict.VALID:
        raise ValueError(f"{tuple(sol)} is not a nontrivial solution")
    entries: list[dict] = []
    models: dict[Fraction, QuarticModel | None] = {}
    for t in sorted(t_orbit(sol)):
        for perm in permutations_with_t(sol, t):
            entry: dict = {"t": _fmt(t), "permutation": list(perm)}
            entries.append(entry)
            try:
                p, q, r, s = pqrs_from_solution(perm, "D")
            except ChartViolation as exc:
                entry.update(ok=False, error=str(exc))
                continue
            if t not in models:
                models[t] = build_model(t)
            model = models[t]
            entry["pqrs"] = [_fmt(x) for x in (p, q, r, s)]
            entry["eq_r"] = model is not None and model.conic.contains(p, q, r)
            entry["eq_s"] = model is not None and model.target.contains(p, q, s)
            if model is None or not (entry["eq_r"] and entry["eq_s"]):
                entry.update(ok=False, error="conic check failed")
                continue
            k = model.conic.slope(model.base, p, q, r)
            entry["k"] = _fmt(k)
            if k is None:
                entry.update(ok=False, error="vertical line through the base point")
                continue
            y = rational_sqrt_exact(model.quartic(k))
            if y is None or y == 0:
                entry.update(ok=False, error="quartic value is not a nonzero square")
                continue
            qpt = QuarticPoint(k, y)
            entry["quartic_point"] = [_fmt(k), _fmt(y)]
            ept = quartic_to_curve(model.quartic, qpt, t)
            entry["curve_point"] = [_fmt(ept.u), _fmt(ept.v)]
            recovered = curve_to_quartic_Xs(model.quartic, ept, t) if ept.u != 0 else []
            entry["recovered"] = [_fmt(x) for x in recovered]
            entry["lift"] = str(model.lift(k))
            entry["ok"] = k in recovered and model.lift(k) == Solution(*canonical(tuple(sol)))
    return entries
