"""Run every kernel and theta check over a window, for each spoke."""

from __future__ import annotations

from .graph import SpokeParams
from .growth import AbelianImages, reduce_labels, vhat_image
from .kernel import (
    CheckResult,
    XCache,
    decomposition_check,
    membership_check,
    recurrence_consistency_check,
    xtilde_recurrence_check,
)
from .theta import ThetaAssignment, corrupted, periodicity_check, relation_image, theta_value_check


def spoke_checks(cache: XCache, theta: ThetaAssignment, rp=None) -> list[CheckResult]:
    cache.fill()
    l = cache.l
    js = range(cache.jmin, cache.jmax + 1)
    out = recurrence_consistency_check(cache)
    out += xtilde_recurrence_check(cache)
    out += [decomposition_check(cache, j) for j in js]
    out += [membership_check(cache, j) for j in js if not 0 <= j < 2 * l]
    out += theta_value_check(theta, cache)
    out += periodicity_check(theta, cache)
    out += [relation_image(theta, cache, j) for j in js]
    if rp is not None:
        ab = AbelianImages(rp, cache.i, theta)
        for j in js:
            ok = vhat_image(rp, cache, j, theta) == ab.vhat(j)
            out.append(CheckResult(j, cache.i, "vhat_two_routes", ok))
    return out


def verify_spokes(p: SpokeParams, jmin: int | None = None, jmax: int | None = None,
                  corrupt_theta: bool = False) -> dict:
    """All checks for every spoke of the reduced parameters."""
    rp = reduce_labels(p)
    theta = corrupted(rp.params) if corrupt_theta else ThetaAssignment(rp.params)
    results, windows = [], {}
    for i in range(2, rp.params.n + 1):
        cache = XCache(rp.params, i, jmin, jmax)
        windows[str(i)] = [cache.jmin, cache.jmax]
        results += spoke_checks(cache, theta, rp)
    failures = [r for r in results if not r.passed]
    summary: dict[str, list[int]] = {}
    for r in results:
        tally = summary.setdefault(r.check, [0, 0])
        tally[0 if r.passed else 1] += 1
    return {
        "params": p.to_json(),
        "reduced_params": rp.to_json(),
        "windows": windows,
        "summary": {name: {"pass": a, "fail": b} for name, (a, b) in sorted(summary.items())},
        "passed": not failures,
        "first_failure": failures[0].to_json() if failures else None,
    }
