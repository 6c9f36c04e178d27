"""The staged colouring pipeline.

Given a colour budget ``r`` and a forbidden path length ``k`` (vertices), the
pipeline colours every edge of the input through stages that each leave a
residual for the next:

1. low-degree refinement: everything touching a vertex of degree <= r/7,
   within ``r/3`` colours (matchings and star forests);
2. an initial star refinement with ``floor(r/6)`` colours, aiming the
   residual's maximum degree at ``beta0 * r * log r``;
3. shrinking rounds ``i = 0, 1, ...``: up to ``floor(r * rho^i / 12)``
   certified path-free extractions, then a star refinement with the same
   number of colours, spending at most ``r * rho^i / 6`` per round while the
   tracked degree bound decays by ``zeta`` per round;
4. an endgame on what is left: a proper colouring directly when the maximum
   degree is at most ``r/7``, otherwise a wide star refinement followed by a
   proper colouring.

Every class produced anywhere is path-free for the given ``k`` by
construction, so the pipeline's only failure mode is spending more than ``r``
colours; soundness is re-checked independently by :mod:`pathfree.verify`.
``k = 3`` is special: only matchings avoid 3-vertex paths, so the pipeline
reduces to one proper colouring.

All thresholds and budgets are tracked as exact rationals.  Defaults for the
shrink parameters are ``eta = 1/10``, ``zeta = 1/3``, ``rho = 2/5``; the
density scale ``beta0`` defaults to the value dictated by the asymptotic
analysis (about 8e-153), which desk-scale experiments will usually override.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .colouring import (
    EdgeColouring,
    low_degree_refinement,
    proper_edge_colouring,
    star_refinement,
)
from .errors import InternalInvariantError, UsageError
from .extract import extract_from_densest_band
from .graph import Graph, subtract
from .rng import subseed

__all__ = [
    "default_density_scale",
    "PipelineParams",
    "StageRecord",
    "RoundTrace",
    "RoundOutcome",
    "run_round",
    "PipelineResult",
    "colour_graph",
    "audit_round_budgets",
]


def default_density_scale() -> float:
    """Largest beta0 satisfying both closing inequalities of the analysis.

    Solves ``(1/b)^(1/30) >= max(2e * 360 * 60, log(5 / b^2))`` for the
    largest ``b`` by bisection on the exponent.  The first constraint binds,
    so the value is essentially ``(2e * 360 * 60)^-30``.
    """
    big = 2 * math.e * 360 * 60

    def holds(log10_b: float) -> bool:
        # log-space to survive b**2 underflow near 1e-300
        lhs = 10.0 ** (-log10_b / 30.0)
        rhs = math.log(5.0) - 2.0 * log10_b * math.log(10.0)
        return lhs >= big and lhs >= rhs

    lo, hi = -300.0, 0.0  # holds at lo, fails at hi
    for _ in range(200):
        mid = (lo + hi) / 2
        if holds(mid):
            lo = mid
        else:
            hi = mid
    return 10.0**lo


DEFAULT_DENSITY_SCALE = default_density_scale()


@dataclass(frozen=True)
class PipelineParams:
    """All knobs of one pipeline run.

    ``strict`` raises on violated analytic preconditions instead of merely
    reporting them; ``c0`` defaults to ``beta0 / 576``.
    """

    r: int
    k: int
    eta: Fraction = Fraction(1, 10)
    zeta: Fraction = Fraction(1, 3)
    rho: Fraction = Fraction(2, 5)
    beta0: float = DEFAULT_DENSITY_SCALE
    c0: Fraction | None = None
    trials_per_extraction: int = 200
    seed: int = 0
    threads: int = 1
    strict: bool = False

    def __post_init__(self) -> None:
        if self.r < 1:
            raise UsageError("colour budget r must be at least 1")
        if self.k < 3:
            raise UsageError("no colouring avoids 2-vertex paths; k must be >= 3")
        for name in ("eta", "zeta", "rho"):
            value = getattr(self, name)
            if not (0 < value < 1):
                raise UsageError(f"{name} must lie strictly between 0 and 1")
        if not self.rho < Fraction(1, 2):
            raise UsageError("rho must be below 1/2")
        if not float(self.zeta) ** 0.9 < float(self.rho):
            raise UsageError("need zeta^0.9 < rho")
        if not self.eta < self.rho * self.zeta:
            raise UsageError("need eta < rho * zeta")
        if self.beta0 <= 0:
            raise UsageError("beta0 must be positive")
        if self.trials_per_extraction < 1:
            raise UsageError("need at least one extraction trial")
        if self.threads < 1:
            raise UsageError("need at least one thread")
        if self.strict and not self.k >= 100 * math.log(self.r):
            raise UsageError("strict mode requires k >= 100 log r")

    @property
    def density_scale(self) -> Fraction:
        return self.c0 if self.c0 is not None else Fraction(self.beta0) / 576

    def to_record(self) -> dict:
        return {
            "r": self.r,
            "k": self.k,
            "eta": str(self.eta),
            "zeta": str(self.zeta),
            "rho": str(self.rho),
            "beta0": self.beta0,
            "beta0_is_default": self.beta0 == DEFAULT_DENSITY_SCALE,
            "c0": str(self.density_scale),
            "trials_per_extraction": self.trials_per_extraction,
            "seed": self.seed,
            "threads": self.threads,
            "strict": self.strict,
        }


@dataclass(frozen=True)
class StageRecord:
    """Colour accounting for one non-round stage."""

    name: str
    colour_base: int
    colours_used: int
    budget: Fraction
    budget_ok: bool
    edges_before: int
    edges_after: int
    notes: dict = field(default_factory=dict)

    def to_record(self) -> dict:
        return {
            "name": self.name,
            "colour_base": self.colour_base,
            "colours_used": self.colours_used,
            "budget": str(self.budget),
            "budget_ok": self.budget_ok,
            "edges_before": self.edges_before,
            "edges_after": self.edges_after,
            "notes": self.notes,
        }


@dataclass(frozen=True)
class RoundTrace:
    """Everything round ``i`` did, in exact numbers."""

    round_index: int
    colour_base: int
    edges_before: int
    edges_after: int
    max_degree_before: int
    max_degree_after: int
    extractions: int
    star_colours: int
    colours_spent: int
    extraction_budget: int
    budget: Fraction
    edge_target: Fraction
    edge_target_met: bool
    degree_target: float
    degree_target_met: bool
    extraction_ratios: tuple[Fraction, ...]
    aborted: bool
    abort_reason: str | None

    def to_record(self) -> dict:
        return {
            "round_index": self.round_index,
            "colour_base": self.colour_base,
            "edges_before": self.edges_before,
            "edges_after": self.edges_after,
            "max_degree_before": self.max_degree_before,
            "max_degree_after": self.max_degree_after,
            "extractions": self.extractions,
            "star_colours": self.star_colours,
            "colours_spent": self.colours_spent,
            "extraction_budget": self.extraction_budget,
            "budget": str(self.budget),
            "edge_target": str(self.edge_target),
            "edge_target_met": self.edge_target_met,
            "degree_target": self.degree_target,
            "degree_target_met": self.degree_target_met,
            "extraction_ratios": [str(x) for x in self.extraction_ratios],
            "aborted": self.aborted,
            "abort_reason": self.abort_reason,
        }


@dataclass(frozen=True)
class RoundOutcome:
    trace: RoundTrace
    colouring: EdgeColouring
    residual: Graph


def run_round(
    g: Graph, round_index: int, params: PipelineParams, colour_base: int
) -> RoundOutcome:
    """One shrinking round: certified extractions, then a star refinement.

    Each extraction becomes one colour class; the loop stops once the edge
    count drops to ``eta`` times the starting count or the extraction budget
    ``floor(r * rho^i / 12)`` runs out.  The star step gets the same number
    of colours.  Total spending is at most ``r * rho^i / 6`` by construction;
    exceeding it would be a bug and raises.
    """
    if params.k < 4:
        raise UsageError("rounds need k >= 4 (star classes contain P_3)")
    r, k = params.r, params.k
    extraction_budget = math.floor(Fraction(r) * params.rho**round_index / 12)
    budget = Fraction(r) * params.rho**round_index / 6
    edges_before = g.edge_count
    degree_before = g.max_degree
    edge_target = params.eta * edges_before
    beta_round = params.beta0 * float(params.zeta) ** round_index

    work = g
    assignments: dict = {}
    ratios: list[Fraction] = []
    spent = 0
    aborted = False
    abort_reason: str | None = None

    for j in range(extraction_budget):
        if Fraction(work.edge_count) <= edge_target:
            break
        band = extract_from_densest_band(
            work,
            beta=beta_round,
            r=r,
            k=k,
            trials=params.trials_per_extraction,
            seed=subseed(params.seed, "round", round_index, "extract", j),
            threads=params.threads,
        )
        result = band.extraction
        if not result.certified:
            aborted = True
            abort_reason = "uncertified-extraction"
            break
        if result.subgraph.edge_count == 0:
            aborted = True
            abort_reason = "empty-extraction"
            break
        colour = colour_base + spent
        for e in result.subgraph.edges:
            assignments[e] = colour
        work = subtract(work, result.subgraph.edges)
        spent += 1
        ratios.append(band.achieved_ratio)

    star_used = 0
    if not aborted and extraction_budget >= 1 and work.edge_count > 0:
        star = star_refinement(work, extraction_budget, k, colour_base + spent)
        assignments.update(star.colouring.assignments)
        star_used = star.colours_used
        spent += star_used
        work = star.residual

    if Fraction(spent) > budget:
        raise InternalInvariantError(
            f"round {round_index} spent {spent} colours over budget {budget}"
        )
    degree_target = params.beta0 * float(params.zeta) ** (round_index + 1) * r * (
        math.log(r) if r > 1 else 1.0
    )
    trace = RoundTrace(
        round_index=round_index,
        colour_base=colour_base,
        edges_before=edges_before,
        edges_after=work.edge_count,
        max_degree_before=degree_before,
        max_degree_after=work.max_degree,
        extractions=len(ratios),
        star_colours=star_used,
        colours_spent=spent,
        extraction_budget=extraction_budget,
        budget=budget,
        edge_target=edge_target,
        edge_target_met=Fraction(work.edge_count) <= edge_target,
        degree_target=degree_target,
        degree_target_met=work.max_degree <= degree_target,
        extraction_ratios=tuple(ratios),
        aborted=aborted,
        abort_reason=abort_reason,
    )
    return RoundOutcome(trace, EdgeColouring(assignments), work)


@dataclass(frozen=True)
class PipelineResult:
    params: PipelineParams
    colouring: EdgeColouring
    stages: tuple[StageRecord, ...]
    rounds: tuple[RoundTrace, ...]
    total_colours: int
    success: bool
    preconditions: dict
    termination_reason: str | None
    endgame_case: str | None

    def to_record(self) -> dict:
        return {
            "params": self.params.to_record(),
            "stages": [s.to_record() for s in self.stages],
            "rounds": [t.to_record() for t in self.rounds],
            "total_colours": self.total_colours,
            "colour_budget": self.params.r,
            "success": self.success,
            "preconditions": self.preconditions,
            "termination_reason": self.termination_reason,
            "endgame_case": self.endgame_case,
        }


def _preconditions(g: Graph, params: PipelineParams) -> dict:
    r, k = params.r, params.k
    log_r = math.log(r) if r > 1 else 1.0
    density_cap = float(params.density_scale) * r * r * log_r * k
    return {
        "edges": g.edge_count,
        "density_cap": density_cap,
        "density_ok": g.edge_count <= density_cap,
        "k": k,
        "k_floor": 100 * log_r,
        "k_ok": k >= 100 * log_r,
    }


def colour_graph(g: Graph, params: PipelineParams) -> PipelineResult:
    """Colour every edge of ``g``; success means at most ``r`` colours total.

    The result's colouring is always total and always path-free by
    construction for the given ``k``; budgets and preconditions are reported
    per stage so a failed run explains where the colours went.
    """
    r, k = params.r, params.k
    preconditions = _preconditions(g, params)
    stages: list[StageRecord] = []
    rounds: list[RoundTrace] = []
    assignments: dict = {}
    base = 0

    def merge(colouring: EdgeColouring) -> None:
        overlap = assignments.keys() & colouring.assignments.keys()
        if overlap:
            raise InternalInvariantError("stage colourings overlap on edges")
        assignments.update(colouring.assignments)

    if k == 3:
        proper = proper_edge_colouring(g, 0)
        merge(proper)
        used = proper.colours_used
        stages.append(
            StageRecord(
                name="proper-only",
                colour_base=0,
                colours_used=used,
                budget=Fraction(r),
                budget_ok=used <= r,
                edges_before=g.edge_count,
                edges_after=0,
                notes={"reason": "k=3 admits only matchings as classes"},
            )
        )
        return _finish(
            g, params, assignments, stages, rounds, preconditions,
            termination="k3-direct", endgame="proper-only",
        )

    current = g
    low = low_degree_refinement(current, r, base)
    merge(low.colouring)
    stages.append(
        StageRecord(
            name="low-degree",
            colour_base=base,
            colours_used=low.colours_used,
            budget=low.budget,
            budget_ok=low.budget_ok,
            edges_before=current.edge_count,
            edges_after=low.residual.edge_count,
            notes={
                "degree_threshold": str(low.threshold),
                "low_vertices": len(low.vertices_removed),
                "high_vertices": g.vertex_count - len(low.vertices_removed),
                "residual_active_vertices": len(low.residual.non_isolated()),
            },
        )
    )
    base += low.colours_used
    current = low.residual

    log_r = math.log(r) if r > 1 else 1.0
    initial_star_colours = r // 6
    if initial_star_colours >= 1 and current.edge_count > 0:
        star0 = star_refinement(current, initial_star_colours, k, base)
        merge(star0.colouring)
        degree_goal = params.beta0 * r * log_r
        stages.append(
            StageRecord(
                name="initial-star",
                colour_base=base,
                colours_used=star0.colours_used,
                budget=Fraction(r, 6),
                budget_ok=star0.colours_used <= Fraction(r, 6),
                edges_before=current.edge_count,
                edges_after=star0.residual.edge_count,
                notes={
                    "degree_threshold": str(star0.threshold),
                    "degree_goal": degree_goal,
                    "degree_goal_met": star0.residual.max_degree <= degree_goal,
                    "packing_ok": star0.degree_bound_ok,
                },
            )
        )
        base += star0.colours_used
        current = star0.residual

    termination: str | None = None
    i = 0
    while True:
        tracked_degree = params.beta0 * float(params.zeta) ** i * r * log_r
        if tracked_degree < r / 7:
            termination = "degree-floor"
            break
        if current.edge_count**4 <= r**7 * k**4:
            termination = "edge-floor"
            break
        if math.floor(Fraction(r) * params.rho**i / 12) < 1:
            termination = "round-budget-exhausted"
            break
        outcome = run_round(current, i, params, base)
        rounds.append(outcome.trace)
        merge(outcome.colouring)
        base += outcome.trace.colours_spent
        previous = current.edge_count
        current = outcome.residual
        if outcome.trace.aborted:
            termination = "extraction-failed"
            break
        if outcome.trace.colours_spent == 0 and current.edge_count >= previous:
            termination = "stalled"
            break
        i += 1

    endgame = "empty"
    if current.edge_count > 0:
        endgame_base = base
        endgame_before = current.edge_count
        if 7 * current.max_degree <= r:
            endgame = "proper"
        elif current.edge_count**4 <= r**7 * k**4:
            endgame = "star+proper"
        else:
            endgame = "fallback-star+proper"
        star_used = 0
        star_note: dict = {}
        if endgame != "proper":
            wide = math.ceil(56 * r**0.75)
            star_end = star_refinement(current, wide, k, base)
            merge(star_end.colouring)
            star_used = star_end.colours_used
            base += star_used
            current = star_end.residual
            star_note = {
                "star_colour_cap": wide,
                "star_colours": star_used,
                "packing_ok": star_end.degree_bound_ok,
            }
        proper_used = 0
        if current.edge_count > 0:
            final = proper_edge_colouring(current, base)
            merge(final)
            proper_used = final.colours_used
            base += proper_used
        endgame_total = star_used + proper_used
        stages.append(
            StageRecord(
                name="endgame",
                colour_base=endgame_base,
                colours_used=endgame_total,
                budget=Fraction(r, 6),
                budget_ok=endgame_total <= Fraction(r, 6),
                edges_before=endgame_before,
                edges_after=0,
                notes={
                    "case": endgame,
                    "proper_colours": proper_used,
                    "proper_cap": math.ceil(Fraction(r, 7)) + 1,
                    **star_note,
                },
            )
        )

    return _finish(
        g, params, assignments, stages, rounds, preconditions,
        termination=termination, endgame=endgame,
    )


def _finish(
    g: Graph,
    params: PipelineParams,
    assignments: dict,
    stages: list[StageRecord],
    rounds: list[RoundTrace],
    preconditions: dict,
    termination: str | None,
    endgame: str | None,
) -> PipelineResult:
    colouring = EdgeColouring(dict(assignments))
    if colouring.assignments.keys() != g.edges:
        raise InternalInvariantError("pipeline left edges uncoloured")
    total = colouring.colours_used
    expected = sum(s.colours_used for s in stages) + sum(
        t.colours_spent for t in rounds
    )
    if total != expected:
        raise InternalInvariantError(
            f"colour ranges are not compact: {total} used vs {expected} allocated"
        )
    return PipelineResult(
        params=params,
        colouring=colouring,
        stages=tuple(stages),
        rounds=tuple(rounds),
        total_colours=total,
        success=total <= params.r,
        preconditions=preconditions,
        termination_reason=termination,
        endgame_case=endgame,
    )


def audit_round_budgets(result: PipelineResult) -> list[str]:
    """Re-check every round's spending against ``r * rho^i / 6``, exactly.

    Returns human-readable violation strings; any entry means an internal
    invariant was broken (the command line maps that to exit code 3).
    """
    violations: list[str] = []
    r, rho = result.params.r, result.params.rho
    for trace in result.rounds:
        cap = Fraction(r) * rho**trace.round_index / 6
        if Fraction(trace.colours_spent) > cap:
            violations.append(
                f"round {trace.round_index} spent {trace.colours_spent} "
                f"colours, budget {cap}"
            )
        if trace.colours_spent != trace.extractions + trace.star_colours:
            violations.append(
                f"round {trace.round_index} spending does not decompose"
            )
    return violations
