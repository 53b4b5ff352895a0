"""Acceptance criteria, one test each, with a pass/fail line per criterion.

The lines are collected in conftest.ACCEPTANCE_LINES and printed in the
terminal summary (and immediately, for ``pytest -s``).
"""

import itertools
import time
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_LINES
from oracles import naive_normal_form
from sigma_artin import criterion
from sigma_artin.characters import CharacterError, normalize, validate_character
from sigma_artin.criterion import Membership, classify
from sigma_artin.free_product import FreeProduct, Word, normal_form
from sigma_artin.graph import SpokeParams, spoke_graph
from sigma_artin.growth import E_s_dimension, es_matrix, hypothesis_check, reduce_labels
from sigma_artin.kernel import (
    XCache,
    decomposition_check,
    membership_check,
    recurrence_consistency_check,
    xtilde_recurrence_check,
)
from sigma_artin.linalg import rank_mod_p, rank_mod_p_transposed
from sigma_artin.theta import ThetaAssignment, corrupted, periodicity_check, relation_image, theta_value_check


def report(number, name, ok, elapsed, budget, detail=""):
    within = elapsed < budget
    status = "PASS" if ok and within else "FAIL"
    line = f"[{status}] criterion {number}: {name} ({elapsed:.2f}s, budget {budget}s){' - ' + detail if detail else ''}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok and within


def timed(fn, *args):
    t0 = time.perf_counter()
    result = fn(*args)
    return result, time.perf_counter() - t0


# -- criterion 1 -------------------------------------------------------------

VALUES = (-2, -1, 0, 1, 2)


def spoke_grid(ns=(2, 3, 4), ks=(2, 3, 4), ls=(1, 2)):
    for n in ns:
        for k in itertools.product(ks, repeat=n):
            for l in itertools.product(ls, repeat=n - 1):
                p = SpokeParams(k, l)
                if hypothesis_check(p)[0]:
                    yield p


def valid_characters(g):
    out = []
    for vals in itertools.product(VALUES, repeat=len(g.vertices)):
        try:
            out.append(validate_character(g, dict(zip(g.vertices, map(Fraction, vals)))))
        except CharacterError:
            pass
    return out


def is_exceptional(c, n):
    target = {"u": Fraction(1), **{f"u{i}": Fraction(-1) for i in range(1, n + 1)}}
    nc = normalize(c)
    return nc.values == target or nc.values == {v: -x for v, x in target.items()}


def run_classifier_sweep():
    """Returns (mismatches, graphs, characters checked)."""
    mismatches, graphs, checked = [], 0, 0
    chars_by_n = {}
    for p in spoke_grid():
        g = spoke_graph(p)
        # odd edges do not depend on k, l; filter the value grid once per n
        if p.n not in chars_by_n:
            chars_by_n[p.n] = valid_characters(g)
            assert len(chars_by_n[p.n]) == 24
        graphs += 1
        for c in chars_by_n[p.n]:
            want = Membership.OUT if is_exceptional(c, p.n) else Membership.IN
            got = classify(g, c).membership
            checked += 1
            if got != want:
                mismatches.append((p, c.values, got))
    return mismatches, graphs, checked


def test_criterion_1_classifier():
    (bad, graphs, checked), dt = timed(run_classifier_sweep)
    ok = not bad
    assert report(1, "classifier on spoke graphs", ok, dt, 10,
                  f"{checked} characters on {graphs} graphs, {len(bad)} mismatches")


# -- criterion 2 -------------------------------------------------------------


def kernel_suite(k1, k, l):
    c = XCache(SpokeParams((k1, k), (l,)), 2).fill()
    js = range(c.jmin, c.jmax + 1)
    res = recurrence_consistency_check(c) + xtilde_recurrence_check(c)
    res += [decomposition_check(c, j) for j in js]
    res += [membership_check(c, j) for j in js if not 0 <= j < 2 * l]
    return res


def test_criterion_2_kernel_rewriting():
    def run():
        out = []
        for k1, k, l in itertools.product((2, 3), (2, 3), (1, 2)):
            out += kernel_suite(k1, k, l)
        return out

    res, dt = timed(run)
    bad = [r for r in res if not r.passed]
    kinds = sorted({r.check for r in res})
    assert report(2, "kernel rewriting and membership", not bad, dt, 60,
                  f"{len(res)} checks ({', '.join(kinds)}), {len(bad)} failed")


# -- criterion 3 -------------------------------------------------------------

THETA_GRID = list(itertools.product((2, 3), (2, 3, 5), (1, 2)))


def theta_suite(make_theta):
    out = []
    for k1, k, l in THETA_GRID:
        p = SpokeParams((k1, k), (l,))
        t, c = make_theta(p), XCache(p, 2).fill()
        out += theta_value_check(t, c, range(0, 4 * l + 2))
        out += periodicity_check(t, c)
        out += [relation_image(t, c, j) for j in range(c.jmin, c.jmax + 1)]
    return out


def test_criterion_3_theta():
    res, dt = timed(theta_suite, ThetaAssignment)
    bad = [r for r in res if not r.passed]
    assert report(3, "theta values, period and relation images", not bad, dt, 30,
                  f"{len(res)} checks, {len(bad)} failed")


# -- criterion 4 -------------------------------------------------------------


def test_criterion_4_growth_witness():
    def run():
        notes, ok = [], True
        rp = reduce_labels(SpokeParams((2, 2), (1,)))
        dims = [E_s_dimension(rp, s, cross_check=True).dim for s in range(1, 7)]
        ok &= all(d >= 2 * s for s, d in enumerate(dims, 1))
        ok &= all(a < b for a, b in zip(dims, dims[1:]))
        notes.append(f"(2,2;1) dims {dims}")
        rp = reduce_labels(SpokeParams((2, 2, 3), (1, 2)))
        rows = [E_s_dimension(rp, s, cross_check=True) for s in range(1, 5)]
        delta, l = 2, 3
        literal = [delta * s * l * (1 - Fraction(1, 3) - Fraction(1, 5)) for s in range(1, 5)]
        ok &= all(r.dim >= b for r, b in zip(rows, literal))
        ok &= all(r.dim >= r.lower_bound for r in rows)
        ok &= all(a.dim < b.dim for a, b in zip(rows, rows[1:]))
        notes.append(f"(2,2,3;1,2) dims {[r.dim for r in rows]} vs {[str(b) for b in literal]}")
        return ok, notes

    (ok, notes), dt = timed(run)
    assert report(4, "growth witness", ok, dt, 120, "; ".join(notes))


# -- criterion 5 -------------------------------------------------------------


def test_criterion_5_oracles(rng):
    def run():
        ambients = [
            FreeProduct.A(SpokeParams((3, 2, 3), (1, 2))),
            FreeProduct.M(SpokeParams((2, 3, 2), (2, 1))),
            FreeProduct.K_i(2, 5, 2),
        ]
        words = 0
        for amb in ambients:
            factors = [("y", j) for j in range(-3, 4) if amb.contains(("y", j))]
            factors += [("x", i, j) for i, _, l in amb.spokes for j in range(2 * l)]
            if amb.d_orders:
                factors.append(("d",))
            for _ in range(3400):
                syl = []
                for f in rng.choices(factors, k=rng.randint(0, 14)):
                    if f[0] == "d":
                        syl.append((f, tuple(rng.randint(-3, 3) for _ in amb.d_orders)))
                    else:
                        syl.append((f, rng.randint(-4, 4)))
                if normal_form(Word(amb, tuple(syl))).syllables != naive_normal_form(amb, syl):
                    return False, f"normal form mismatch on {syl}"
                words += 1
        matrices = 0
        for k, l in (((2, 2), (1,)), ((2, 2, 3), (1, 2)), ((3, 2, 2), (1, 2)), ((2, 2, 5), (2, 1))):
            rp = reduce_labels(SpokeParams(k, l))
            for s in range(1, 10):
                rows, ncols, ring, _, _ = es_matrix(rp, s)
                if ncols > 200:
                    break
                if rank_mod_p(rows, ring.p) != rank_mod_p_transposed(rows, ring.p):
                    return False, f"rank mismatch for {k},{l}, s={s}"
                matrices += 1
        return words >= 10**4 and matrices > 0, f"{words} random words, {matrices} witness matrices"

    (ok, detail), dt = timed(run)
    assert report(5, "oracle cross-checks", ok, dt, 120, detail)


# -- criterion 6 -------------------------------------------------------------


def test_criterion_6_negative_controls(monkeypatch):
    def run():
        theta_bad = [r for r in theta_suite(corrupted) if not r.passed]
        with monkeypatch.context() as m:
            m.setattr(criterion, "dead_edges", lambda g, c: set())
            classify_bad, _, _ = run_classifier_sweep()
        return theta_bad, classify_bad

    (theta_bad, classify_bad), dt = timed(run)
    ok = bool(theta_bad) and bool(classify_bad)
    assert report(6, "sabotaged runs are detected", ok, dt, 60,
                  f"corrupted theta: {len(theta_bad)} failures; no dead edges: {len(classify_bad)} mismatches")
