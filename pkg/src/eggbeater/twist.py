"""Chart-level dynamics of the linked twist map.

Two cotangent torus bundles are glued over a neighborhood of a point,
with transition sending (base, fiber) of one chart to (fiber, -base) of
the other.  Chart 2 carries the b-twists, chart 1 the a-twists; in its
own chart a twist with coefficient c moves the base by c*rho(|v|)*v and
leaves the fiber v fixed.

Working state for a point in chart ``c`` is (v, x_lift, winding): fiber v,
base lift x_lift in the universal cover, and the accumulated integer
winding with x_lift - winding kept in [-1/2, 1/2)^n.

`apply_word` composes the twists of a word with the usual convention that
the rightmost syllable acts first.  Transitions between charts are only
legal near the gluing point; a point that needs a transition outside the
overlap window is reported as escaped rather than raising.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .profiles import TwistParams, eval_rho, eval_h
from .words import EvenWord, Word

CHART_FOR_GEN = {"a": 1, "b": 2}
OVERLAP_RADIUS = 0.25


def _normalize(x_lift: np.ndarray) -> np.ndarray:
    """Integer winding putting x_lift - winding into [-1/2, 1/2)^n."""
    return np.floor(x_lift + 0.5).astype(int)


@dataclass(frozen=True)
class ChartPoint:
    chart: int
    v: np.ndarray
    x_lift: np.ndarray
    winding: np.ndarray

    @classmethod
    def make(cls, chart: int, v, x) -> "ChartPoint":
        v = np.asarray(v, dtype=float)
        x = np.asarray(x, dtype=float)
        return cls(chart=chart, v=v, x_lift=x, winding=_normalize(x))

    @property
    def x_frac(self) -> np.ndarray:
        return self.x_lift - self.winding

    def in_overlap(self, radius: float = OVERLAP_RADIUS) -> bool:
        return (np.max(np.abs(self.v)) <= radius
                and np.max(np.abs(self.x_frac)) <= radius)


@dataclass(frozen=True)
class ApplyResult:
    point: ChartPoint
    escaped: bool = False
    reason: str = ""
    # Winding increments recorded per syllable, most recent last; each
    # entry is (chart, integer vector).  These recover the homotopy class
    # of a closed orbit.
    windings: tuple = ()


def twist_flow(p: ChartPoint, t: float, coefficient: float,
               params: TwistParams, smoothed: bool = True) -> ChartPoint:
    """Time-t twist in the point's own chart with the given coefficient."""
    speed = eval_rho(float(np.linalg.norm(p.v)), params, smoothed)
    x_new = p.x_lift + t * coefficient * speed * p.v
    return replace(p, x_lift=x_new, winding=_normalize(x_new))


def chart_transition(p: ChartPoint, to_chart: int) -> ChartPoint:
    """Gluing map between the two charts, valid near the plumbing point.

    Chart 1 coordinates of a chart-2 point (v, x) are (x, -v); the inverse
    sends a chart-1 point (v, x) to (-x, v).
    """
    if to_chart == p.chart:
        return p
    xf = p.x_frac
    if p.chart == 2:
        v_new, x_new = xf, -p.v
    else:
        v_new, x_new = -xf, p.v
    return ChartPoint(chart=to_chart, v=v_new, x_lift=x_new,
                      winding=_normalize(x_new))


def apply_word(p: ChartPoint, w: Word, params: TwistParams,
               smoothed: bool = True,
               overlap: float = OVERLAP_RADIUS) -> ApplyResult:
    """Apply the N-amplified twist map of ``w`` to ``p``.

    Each syllable g^k acts by the time-1 twist with coefficient k*N in
    the chart of g, with the rightmost syllable acting first.
    """
    cur = p
    windings: list = []
    for syll in reversed(w.syllables):
        target = CHART_FOR_GEN[syll.gen]
        if cur.chart != target:
            if not cur.in_overlap(overlap):
                return ApplyResult(point=cur, escaped=True,
                                   reason="transition outside overlap",
                                   windings=tuple(windings))
            cur = chart_transition(cur, target)
        before = cur.winding.copy()
        cur = twist_flow(cur, 1.0, syll.exp * params.N, params, smoothed)
        windings.append((target, tuple(int(d) for d in cur.winding - before)))
    return ApplyResult(point=cur, escaped=False, windings=tuple(windings))


@dataclass(frozen=True)
class HamiltonianSegment:
    """One unit-time piece of the generating Hamiltonian path.

    The segment's Hamiltonian is coefficient * h(|fiber|) in its own
    chart; it is autonomous, so its value along the segment is constant.
    """

    chart: int
    coefficient: float
    params: TwistParams = field(repr=False)
    duration: float = 1.0

    def value(self, p: ChartPoint, smoothed: bool = True) -> float:
        q = chart_transition(p, self.chart)
        return self.coefficient * eval_h(float(np.linalg.norm(q.v)),
                                         self.params, smoothed)

    def flow(self, p: ChartPoint, t: float | None = None,
             smoothed: bool = True) -> ChartPoint:
        if t is None:
            t = self.duration
        q = chart_transition(p, self.chart)
        return twist_flow(q, t, self.coefficient, self.params, smoothed)


def build_hamiltonian_path(form: EvenWord,
                           params: TwistParams) -> list[HamiltonianSegment]:
    """Unit-time Hamiltonian segments composing to the map of ``form``,
    listed in the order they act (the final b-syllable first)."""
    segments = []
    for kb, ka in form.step_exponents():
        segments.append(HamiltonianSegment(chart=2, coefficient=kb * params.N,
                                           params=params))
        segments.append(HamiltonianSegment(chart=1, coefficient=ka * params.N,
                                           params=params))
    return segments
