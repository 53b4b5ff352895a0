"""Rank of integer matrices over a prime field Z_p."""

from __future__ import annotations


def _normalize(rows, p):
    return [[x % p for x in row] for row in rows]


def rank_mod_p(rows: list[list[int]], p: int) -> int:
    """Rank by row reduction, pivots taken left to right."""
    m = _normalize(rows, p)
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][col], -1, p)
        prow = [(x * inv) % p for x in m[rank]]
        m[rank] = prow
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [(a - f * b) % p for a, b in zip(m[r], prow)]
        rank += 1
        if rank == len(m):
            break
    return rank


def rank_mod_p_transposed(rows: list[list[int]], p: int) -> int:
    """Rank of the transpose, eliminating from the last column backwards.

    Uses a different pivot order and only forward elimination, so it shares
    no control flow with :func:`rank_mod_p`.
    """
    m = _normalize(rows, p)
    if not m:
        return 0
    t = [list(col) for col in zip(*m)]
    basis: dict[int, list[int]] = {}  # pivot position -> reduced vector
    for vec in t:
        vec = vec[::-1]
        for pos in range(len(vec)):
            if not vec[pos]:
                continue
            if pos in basis:
                b = basis[pos]
                f = vec[pos] * pow(b[pos], -1, p) % p
                vec = [(a - f * c) % p for a, c in zip(vec, b)]
            else:
                basis[pos] = vec
                break
    return len(basis)
