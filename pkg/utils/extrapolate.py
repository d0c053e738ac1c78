"""
Exact degree ladders and two-point Richardson extrapolation of the
1/d corrections of a polynomial family.

For each rung d the exact rational Δ_n(d) is computed:

    moments    Δ_n(d) = d (m_n(p_d) − m_n(μ))           → m′_n
    cumulants  Δ_n(d) = d (κ_n(p_d) − r_n(μ))           → r̂_n
    minor flow Δ_n(d) = (d − s) m_n(p_d^{(s)}) − d m_n(μ) → [z^{−n−1}] G_τ

and consecutive rungs are combined as R(d1, d2) = (d2 Δ(d2) − d1 Δ(d1))/(d2 − d1),
which removes the 1/d term of Δ's own expansion.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import List, Optional, Sequence, Union

from models.family import Family, LadderReport, MinorFlow
from utils.cumulants import finite_cumulants_from_coeffs, moments
from utils.errors import InputContractError, LadderError

log = logging.getLogger(__name__)

QUANTITIES = ("moments", "cumulants")


def richardson(d1: int, delta1: Fraction, d2: int, delta2: Fraction) -> Fraction:
    if d1 == d2:
        raise LadderError("Richardson extrapolation needs two distinct degrees")
    return (d2 * delta2 - d1 * delta1) / (d2 - d1)


def _check_ladder(ladder: Sequence[int], n_max: int, admissible) -> List[int]:
    ladder = list(ladder)
    if len(ladder) < 2:
        raise LadderError(f"a ladder needs at least two degrees, got {ladder}")
    if any(b <= a for a, b in zip(ladder, ladder[1:])):
        raise LadderError(f"ladder degrees must be strictly increasing, got {ladder}")
    if ladder[0] < n_max:
        raise LadderError(f"every degree must be at least n_max={n_max}, got {ladder[0]}")
    bad = [d for d in ladder if not admissible(d)]
    if bad:
        raise LadderError(f"inadmissible degrees {bad}")
    return ladder


def _evaluate(rung, ladder: List[int], workers: int) -> List[List[Fraction]]:
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(rung, ladder))
    return [rung(d) for d in ladder]


def _reports(quantity: str, ladder: List[int], deltas: List[List[Fraction]],
             predicted: Optional[Sequence[Fraction]]) -> List[LadderReport]:
    out = []
    for n in range(1, len(deltas[0]) + 1):
        column = [row[n - 1] for row in deltas]
        steps = [richardson(d1, x1, d2, x2) for d1, x1, d2, x2 in zip(ladder, column, ladder[1:], column[1:])]
        target = None if predicted is None else predicted[n - 1]
        error = None if target is None else abs(steps[-1] - target)
        out.append(LadderReport(n, quantity, list(zip(ladder, column)), steps, steps[-1], target, error))
    return out


# -----------------------------
# Public API
# -----------------------------
def extrapolate_family(f: Family, n_max: int, ladder: Sequence[int], quantity: str = "moments",
                       workers: int = 1) -> List[LadderReport]:
    """One LadderReport per n = 1..n_max."""
    if quantity not in QUANTITIES:
        raise InputContractError(f"unknown quantity {quantity!r}; expected one of {QUANTITIES}")
    ladder = _check_ladder(ladder, n_max, f.admissible)
    meta = f.meta(n_max)
    law = meta.law

    def rung(d: int) -> List[Fraction]:
        log.info("%s: evaluating d=%d", f.label(), d)
        p = f(d)
        if quantity == "moments":
            values, limit = moments(p, n_max), law.m
        else:
            values, limit = finite_cumulants_from_coeffs(p, n_max, method="recursive"), law.r
        return [d * (v - l) for v, l in zip(values, limit)]

    if quantity == "moments":
        predicted = None if meta.inf is None else meta.inf.mprime
    else:
        predicted = None if meta.fluct is None else meta.fluct.rhat
    return _reports(quantity, ladder, _evaluate(rung, ladder, workers), predicted)


def extrapolate_minor_flow(flow: MinorFlow, n_max: int, ladder: Sequence[int],
                           workers: int = 1) -> List[LadderReport]:
    ladder = _check_ladder(ladder, n_max + flow.s, flow.admissible)
    law = flow.family.meta(n_max).law
    s = flow.s

    def rung(d: int) -> List[Fraction]:
        log.info("%s: evaluating d=%d", flow.label(), d)
        values = moments(flow(d), n_max)
        return [(d - s) * v - d * l for v, l in zip(values, law.m)]

    try:
        predicted = flow.tau(n_max).moments()
    except InputContractError:
        predicted = None
    # c_0 of G_τ is the mass −s; Δ_n pairs with c_n
    return _reports("minor_flow", ladder, _evaluate(rung, ladder, workers), predicted)


def extrapolate(target: Union[Family, MinorFlow], n_max: int, ladder: Sequence[int], quantity: str = "moments",
                workers: int = 1) -> List[LadderReport]:
    if isinstance(target, MinorFlow):
        return extrapolate_minor_flow(target, n_max, ladder, workers)
    return extrapolate_family(target, n_max, ladder, quantity, workers)
