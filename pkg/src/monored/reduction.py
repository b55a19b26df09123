"""Order reduction: permissible blow-up sequences emptying the support.

The driver `reduce` runs the standard two-step induction on the relative
dimension of the centre subvariety P.  While the residual (non-monomial)
part of the ideal has order at least the mark somewhere on the support, it
is order-reduced at its own maximal order; while its order is strictly
between zero and the mark, the balanced companion (residual and monomial
parts raised to complementary marks) is order-reduced instead; what remains
is locally principal and falls to the staged monomial procedure.

Maximal-order reduction works chart by chart.  The components appearing in
generators of minimal degree (the contact variables) cut a smaller-
dimensional subvariety Y carrying a companion ideal with the same support;
reducing the companion by induction and replaying its centres reduces the
chart.  When every generator has full contact degree there is no companion
and blowing up Y itself empties the chart's support in one step.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, replace

from .core import (
    Chart,
    Configuration,
    MarkedIdeal,
    Monomial,
    chart_strata,
    chart_support,
    min_degree,
    distinguished_order,
    sum_marked,
    support,
)
from .errors import (
    ContractError,
    InternalLogicError,
    NotMaximalOrderError,
    NotMonomialError,
    ValidationError,
)
from .transform import BlowUpRecord, blow_up_global

_MAX_PASSES = 4096


@dataclass(frozen=True)
class ContactSplit:
    """Factorization of each generator over the contact variables.

    Contact variables are those appearing in some generator of total degree
    exactly the mark; every generator factors as (contact part) * (residue)
    with disjoint supports, and at least one generator is pure contact of
    full degree.
    """

    contact_vars: frozenset[int]
    parts: tuple[tuple[Monomial, Monomial], ...]
    mark: int


@dataclass(frozen=True)
class MonomialSplit:
    """Greatest common monomial factor and the residual ideal."""

    monomial_part: Monomial
    nonmonomial_part: MarkedIdeal


def contact_split(chart: Chart) -> ContactSplit:
    m = chart.mark
    if distinguished_order(chart) != m:
        raise NotMaximalOrderError(
            f"chart {chart.label!r} has distinguished-point order "
            f"{distinguished_order(chart)}, mark {m}"
        )
    contact: set[int] = set()
    for g in chart.ideal.generators:
        if g.degree() == m:
            contact |= g.components
    parts = tuple(
        (g.restrict(contact), g.drop(contact)) for g in chart.ideal.generators
    )
    if not any(c.degree() == m and r.is_unit() for c, r in parts):
        raise InternalLogicError("no pure contact generator of full degree")
    return ContactSplit(frozenset(contact), parts, m)


def _primitive_root(w: Monomial) -> tuple[Monomial, int]:
    if w.is_unit():
        return w, 1
    g = 0
    for _, e in w.exps:
        g = math.gcd(g, e)
    return Monomial(tuple((c, e // g) for c, e in w.exps)), g


def _prune_summands(raw):
    """Drop summands another summand dominates stably under transforms.

    A marked monomial (w^t, t*mu) is interchangeable with (w, mu): orders
    scale by t at every stratum and birational transforms commute with the
    t-th power, so the equivalence survives every later blow-up.  Among
    summands sharing a primitive root only the one with the largest
    mark-per-power ratio constrains the intersection of supports, now or
    after any permissible sequence; the others multiply the product marking
    up without effect and are dropped (first wins on ties).
    """
    items = []
    for residue, comark in raw:
        root, power = _primitive_root(residue)
        items.append((residue, comark, root, power))
    kept = []
    for i, (res_i, m_i, root_i, a_i) in enumerate(items):
        implied = False
        for j, (_, m_j, root_j, a_j) in enumerate(items):
            if i == j or root_i != root_j:
                continue
            # compare thresholds m_i/a_i vs m_j/a_j without rationals
            cross_i, cross_j = m_i * a_j, m_j * a_i
            if cross_j > cross_i or (cross_j == cross_i and j < i):
                implied = True
                break
        if not implied:
            kept.append((res_i, m_i))
    return kept


def companion_ideal(chart: Chart, split: ContactSplit):
    """Locus cut by the contact variables and its companion marked ideal.

    Summands are the generator residues marked with the contact-degree
    deficit; generators whose contact degree already reaches the mark
    contribute nothing, and with no summand at all there is no companion
    (the support then equals the locus and blowing it up reduces order).
    """
    locus = frozenset(chart.p_components | split.contact_vars)
    raw = [
        (residue, split.mark - contact.degree())
        for contact, residue in split.parts
        if split.mark - contact.degree() > 0
    ]
    if not raw:
        return locus, None
    summands = [
        MarkedIdeal.of([residue], comark) for residue, comark in _prune_summands(raw)
    ]
    return locus, sum_marked(summands)


def monomial_split(chart: Chart) -> MonomialSplit:
    gens = chart.ideal.generators
    common: dict[int, int] = {}
    for c, e in gens[0].exps:
        common[c] = e
    for g in gens[1:]:
        for c in list(common):
            common[c] = min(common[c], g.exponent(c))
    part = Monomial.of({c: e for c, e in common.items() if e})
    residual = MarkedIdeal.of([g.divided_by(part) for g in gens], chart.mark)
    return MonomialSplit(part, residual)


def balanced_companion(chart: Chart, nu: int) -> MarkedIdeal:
    """Residual part marked nu plus monomial part marked (mark - nu)."""
    m = chart.mark
    if not 0 < nu < m:
        raise ContractError(f"nu must lie strictly between 0 and the mark; got {nu}")
    split = monomial_split(chart)
    return sum_marked(
        [
            MarkedIdeal.of(split.nonmonomial_part.generators, nu),
            MarkedIdeal.of([split.monomial_part], m - nu),
        ]
    )


def monomial_derivative(ideal: MarkedIdeal, r: int) -> tuple[Monomial, ...]:
    """All coefficient-free formal derivatives of order up to r.

    For a generator with exponent vector a this is every a - beta with
    0 <= beta <= a componentwise and |beta| <= r.  No divisibility pruning:
    the raw generator set is returned.
    """
    if r < 0:
        raise ValidationError("derivative order must be non-negative")
    out: set[Monomial] = set()
    for g in ideal.generators:
        ranges = [range(0, min(e, r) + 1) for _, e in g.exps]
        for beta in itertools.product(*ranges):
            if sum(beta) > r:
                continue
            out.add(Monomial.of({c: e - b for (c, e), b in zip(g.exps, beta)}))
    return tuple(sorted(out, key=Monomial.sort_key))


def residual_order(cfg: Configuration) -> int:
    """Maximum order of the residual part over the support strata."""
    nu = 0
    for ch in cfg.charts:
        if ch.p_empty:
            continue
        ngens = monomial_split(ch).nonmonomial_part.generators
        for vanishing in chart_strata(ch, cfg.dim_p):
            if min_degree(ch.ideal.generators, vanishing) >= ch.mark:
                nu = max(nu, min_degree(ngens, vanishing))
    return nu


def _apply(cfg: Configuration, center, records: list[BlowUpRecord]) -> Configuration:
    cfg, rec = blow_up_global(cfg, center)
    records.append(rec)
    return cfg


def _lex_first_active(cfg: Configuration):
    """The support-carrying chart with the lexicographically least stratum.

    Support over the oldest components is attacked first; centres tailored
    to young exceptional components would otherwise keep carving overlap
    copies of old-component support out of sibling charts without ever
    exhausting it.
    """
    best = None
    best_key = None
    for index, ch in enumerate(cfg.charts):
        strata = chart_support(ch, cfg.dim_p)
        if not strata:
            continue
        key = (min(tuple(sorted(s)) for s in strata), index)
        if best_key is None or key < best_key:
            best, best_key = ch, key
    return best


def reduce_maximal_order(
    cfg: Configuration, *, _depth: int = 0
) -> tuple[Configuration, list[BlowUpRecord]]:
    """Order reduction for a configuration of maximal order.

    Processes the support-carrying charts one at a time: each processing
    pass empties the chosen chart's lineage for good (one blow-up in the
    degenerate no-companion case, otherwise the replayed reduction of the
    lower-dimensional companion), though its centres may split sibling
    lineages into new support-carrying charts that later passes pick up.
    """
    records: list[BlowUpRecord] = []
    if not support(cfg):
        return cfg, records
    if cfg.dim_p < 1:
        raise InternalLogicError("non-empty support over a zero-dimensional P")
    passes = 0
    while True:
        target = _lex_first_active(cfg)
        if target is None:
            break
        passes += 1
        if passes > _MAX_PASSES:
            raise InternalLogicError("maximal-order reduction failed to converge")
        split = contact_split(target)
        locus, companion = companion_ideal(target, split)
        if companion is None:
            # The support equals the contact locus; one blow-up clears it.
            cfg = _apply(cfg, locus, records)
            continue
        sub_dim = cfg.dim_p - len(split.contact_vars)
        if not 0 <= sub_dim < cfg.dim_p:
            raise InternalLogicError("contact locus does not drop the dimension")
        sub_chart = replace(
            target, p_components=locus, ideal=companion, p_empty=False
        )
        sub = Configuration(cfg.registry, (sub_chart,), sub_dim, cfg.n_blowups)
        _, sub_records = reduce(sub, _depth=_depth + 1)
        if not sub_records:
            raise InternalLogicError(
                "companion with non-empty support emitted no blow-ups"
            )
        for rec in sub_records:
            cfg = _apply(cfg, rec.center, records)
    return cfg, records


def _active_single_generators(cfg: Configuration) -> list[Chart]:
    active = [
        ch
        for ch in cfg.charts
        if not ch.p_empty and chart_support(ch, cfg.dim_p)
    ]
    for ch in active:
        if len(ch.ideal.generators) != 1:
            raise NotMonomialError(
                f"chart {ch.label!r} carries {len(ch.ideal.generators)} generators; "
                "the monomial stage needs locally principal input"
            )
    return active


def _agreeing_exponent(values: dict[int, int], comp: int, value: int) -> None:
    if values.setdefault(comp, value) != value:
        raise InternalLogicError(
            f"component {comp} has inconsistent exponents across charts"
        )


def reduce_monomial(cfg: Configuration) -> tuple[Configuration, list[BlowUpRecord]]:
    """Staged order reduction for locally principal ideals.

    Stage 1 repeatedly blows up the P-locus extended by the single component
    of maximal exponent at least the mark (smallest id on ties); the
    exceptional component re-enters with the exponent lowered by the mark.
    Stage s then clears every s-subset of P-meeting components whose
    exponent sum reaches the mark, largest sum first and lexicographically
    smallest subset on ties.  After stage dim_p the support is empty.
    """
    records: list[BlowUpRecord] = []
    m = cfg.mark
    while True:
        values: dict[int, int] = {}
        for ch in _active_single_generators(cfg):
            g = ch.ideal.generators[0]
            for c, e in g.exps:
                _agreeing_exponent(values, c, e)
        candidates = {c: e for c, e in values.items() if e >= m}
        if not candidates:
            break
        best = max(candidates.values())
        j = min(c for c, e in candidates.items() if e == best)
        cfg = _apply(cfg, cfg.p_components | {j}, records)
    for s in range(2, cfg.dim_p + 1):
        while True:
            sums: dict[tuple[int, ...], int] = {}
            for ch in _active_single_generators(cfg):
                g = ch.ideal.generators[0]
                comps = sorted(g.components)
                for combo in itertools.combinations(comps, s):
                    total = sum(g.exponent(c) for c in combo)
                    if total >= m:
                        _agreeing_exponent(sums, combo, total)
            if not sums:
                break
            best = max(sums.values())
            subset = min(c for c, v in sums.items() if v == best)
            cfg = _apply(cfg, cfg.p_components | set(subset), records)
    if support(cfg):
        raise InternalLogicError("monomial stage terminated with support left")
    return cfg, records


def reduce(
    cfg: Configuration, *, _depth: int = 0
) -> tuple[Configuration, list[BlowUpRecord]]:
    """Full order reduction; the returned sequence empties the support."""
    if _depth > 64:
        raise InternalLogicError("order-reduction recursion exceeded the dimension bound")
    records: list[BlowUpRecord] = []
    if cfg.dim_p == 0:
        # P is a point off every generator component, so the support is empty.
        return cfg, records
    previous_nu = None
    while True:
        if not support(cfg):
            break
        nu = residual_order(cfg)
        if previous_nu is not None and nu >= previous_nu:
            raise InternalLogicError(
                f"residual order failed to decrease ({previous_nu} -> {nu})"
            )
        m = cfg.mark
        if nu >= m:
            sub = _with_residual_ideals(cfg, nu)
        elif nu > 0:
            sub = _with_companion_ideals(cfg, nu)
        else:
            final, recs = reduce_monomial(cfg)
            records.extend(recs)
            cfg = final
            break
        _, recs = reduce_maximal_order(sub, _depth=_depth + 1)
        for rec in recs:
            cfg = _apply(cfg, rec.center, records)
        previous_nu = nu
    if support(cfg):
        raise InternalLogicError("order reduction failed to empty the support")
    return cfg, records


def _with_residual_ideals(cfg: Configuration, nu: int) -> Configuration:
    charts = tuple(
        replace(
            ch,
            ideal=MarkedIdeal.of(
                monomial_split(ch).nonmonomial_part.generators, nu
            ),
        )
        for ch in cfg.charts
    )
    return Configuration(cfg.registry, charts, cfg.dim_p, cfg.n_blowups)


def _with_companion_ideals(cfg: Configuration, nu: int) -> Configuration:
    charts = tuple(
        replace(ch, ideal=balanced_companion(ch, nu)) for ch in cfg.charts
    )
    return Configuration(cfg.registry, charts, cfg.dim_p, cfg.n_blowups)
