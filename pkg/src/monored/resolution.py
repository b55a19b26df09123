"""Principalization and weak embedded resolution on top of order reduction.

Principalization re-marks the ideal with 1 and order-reduces; afterwards
every chart's total transform (birational generators times the accumulated
exceptional multiplier) is generated by a single monomial, and charts whose
ideal was already the unit ideal are never subdivided.

Weak resolution principalizes the defining ideal of an embedded subscheme
while tracking its strict transform per chart (pullback generators with all
exceptional factors removed); the first stage at which some chart's strict
transform becomes a coordinate subscheme is reported together with that
chart set.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .core import (
    Chart,
    Configuration,
    MarkedIdeal,
    Monomial,
    chart_support,
    minimalize,
)
from .errors import ValidationError
from .serialize import config_digest
from .transform import BlowUpRecord, ChartKey
from .reduction import reduce


@dataclass(frozen=True)
class ResolutionTrace:
    """A permissible sequence with its endpoints and reporting data."""

    input_digest: str
    initial: Configuration
    records: tuple[BlowUpRecord, ...]
    final: Configuration
    cosupport: tuple[tuple[ChartKey, frozenset[int]], ...]
    separation_stage: int | None = None
    separated: tuple[tuple[ChartKey, tuple[Monomial, ...]], ...] = ()


def _remarked(cfg: Configuration, mark: int) -> Configuration:
    charts = tuple(
        replace(ch, ideal=MarkedIdeal.of(ch.ideal.generators, mark)) for ch in cfg.charts
    )
    return Configuration(cfg.registry, charts, cfg.dim_p, cfg.n_blowups)


def _cosupport(cfg: Configuration):
    out = []
    for ch in cfg.charts:
        unit_marked = replace(ch, ideal=MarkedIdeal.of(ch.ideal.generators, 1))
        for vanishing in chart_support(unit_marked, cfg.dim_p):
            out.append(((ch.label, ch.path), vanishing))
    return tuple(out)


def total_transform_generators(chart: Chart) -> tuple[Monomial, ...]:
    """Minimal generators of the literal pullback ideal on this chart."""
    return minimalize(
        g.times(chart.pullback_excess) for g in chart.ideal.generators
    )


def principalize(cfg: Configuration) -> ResolutionTrace:
    """Blow up until the pullback ideal is everywhere generated by one monomial."""
    initial = _remarked(cfg, 1)
    cosupport = _cosupport(initial)
    if all(len(ch.ideal.generators) == 1 for ch in initial.charts):
        final, records = initial, []
    else:
        final, records = reduce(initial)
    return ResolutionTrace(
        input_digest=config_digest(initial),
        initial=initial,
        records=tuple(records),
        final=final,
        cosupport=cosupport,
    )


def is_locally_principal(cfg: Configuration, trace: ResolutionTrace | None = None) -> bool:
    """Every chart's minimalized total-transform generator list has length 1."""
    if trace is not None and trace.final != cfg:
        raise ValidationError("trace is inconsistent with the configuration")
    return all(len(total_transform_generators(ch)) == 1 for ch in cfg.charts)


def _pullback_generator(g: Monomial, center, chart_var: int, exceptional: int) -> Monomial:
    out = {c: e for c, e in g.exps if c != chart_var}
    total = g.degree(center)
    if total:
        out[exceptional] = total
    return Monomial.of(out)


def _strict_step(gens, center, chart_var, exceptional, original_count):
    stripped = []
    for g in gens:
        pulled = _pullback_generator(g, center, chart_var, exceptional)
        bare = Monomial(tuple((c, e) for c, e in pulled.exps if c < original_count))
        if not bare.is_unit():
            stripped.append(bare)
    return minimalize(stripped)


def _is_coordinate_subscheme(gens) -> bool:
    return bool(gens) and all(
        len(g.exps) == 1 and g.exps[0][1] == 1 for g in gens
    )


def weak_resolve(cfg: Configuration) -> ResolutionTrace:
    """Resolve an embedded subscheme of codimension at least two.

    Runs principalization and follows the strict transform of the subscheme
    chart by chart; the first stage where it becomes a subset of chart
    coordinates is the separation stage, and those charts carry the smooth
    model together with its blow-up history.
    """
    comps: set[int] = set()
    for ch in cfg.charts:
        comps |= set(ch.ideal.component_support)
    if len(comps) < 2:
        raise ValidationError(
            "the subscheme must have codimension at least 2 "
            "(its generators involve fewer than 2 components)"
        )
    trace = principalize(cfg)
    original_count = len(trace.initial.registry)
    strict: dict[ChartKey, tuple[Monomial, ...]] = {
        (ch.label, ch.path): ch.ideal.generators for ch in trace.initial.charts
    }
    separation_stage = None
    separated: list[tuple[ChartKey, tuple[Monomial, ...]]] = []
    for rec in trace.records:
        for (label, parent), children in rec.outcomes:
            if children is None:
                continue
            gens = strict.pop((label, parent))
            for child, k in zip(children, sorted(rec.center)):
                strict[(label, child)] = _strict_step(
                    gens, rec.center, k, rec.exceptional, original_count
                )
        if separation_stage is None:
            hits = [
                (path, gens)
                for path, gens in sorted(strict.items())
                if _is_coordinate_subscheme(gens)
            ]
            if hits:
                separation_stage = rec.stage
                separated = hits
    return replace(
        trace,
        separation_stage=separation_stage,
        separated=tuple(separated),
    )
