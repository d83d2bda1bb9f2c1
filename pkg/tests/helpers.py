"""Shared test utilities: seeded rational data and independent slow oracles.

Everything here is deliberately written from first principles (no calls into
the library's own combinatorics) so tests compare two genuinely different
routes to the same numbers.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple


def rng(seed: int) -> random.Random:
    return random.Random(seed)


def rand_frac(r: random.Random, num: int = 3, den: int = 4) -> Fraction:
    return Fraction(r.randint(-num, num), r.randint(1, den))


def rand_vec(r: random.Random, d: int) -> Tuple[Fraction, ...]:
    return tuple(rand_frac(r) for _ in range(d))


def rand_mat(r: random.Random, d: int) -> Tuple[Tuple[Fraction, ...], ...]:
    return tuple(tuple(rand_frac(r, 2, 3) for _ in range(d)) for _ in range(d))


def rand_sym_mat(r: random.Random, d: int) -> Tuple[Tuple[Fraction, ...], ...]:
    m = [[Fraction(0)] * d for _ in range(d)]
    for i in range(d):
        for j in range(i, d):
            m[i][j] = m[j][i] = rand_frac(r, 2, 3)
    return tuple(tuple(row) for row in m)


# a rational rotation of the plane (columns are orthonormal)
ROTATION_2D = (
    (Fraction(3, 5), Fraction(-4, 5)),
    (Fraction(4, 5), Fraction(3, 5)),
)


def apply_mat(m: Sequence[Sequence[Fraction]], x: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    return tuple(sum(m[i][j] * x[j] for j in range(len(x))) for i in range(len(m)))


# -- slow, library-independent partition machinery -----------------------------------


def all_partitions_brute(n: int) -> List[Tuple[Tuple[int, ...], ...]]:
    """Every set partition of {1..n} as a tuple of min-sorted blocks."""
    if n == 0:
        return [()]
    out = []
    for smaller in all_partitions_brute(n - 1):
        blocks = [tuple(b) for b in smaller]
        for i in range(len(blocks)):
            out.append(tuple(blocks[:i] + [blocks[i] + (n,)] + blocks[i + 1 :]))
        out.append(tuple(blocks + [(n,)]))
    return [tuple(sorted((tuple(sorted(b)) for b in p), key=lambda b: b[0])) for p in out]


def roles_brute(blocks: Sequence[Sequence[int]], n: int) -> Tuple[str, ...]:
    role = [""] * (n + 1)
    for b in blocks:
        if len(b) == 1:
            role[b[0]] = "S"
        else:
            for x in b:
                if x == min(b):
                    role[x] = "O"
                elif x == max(b):
                    role[x] = "C"
                else:
                    role[x] = "M"
    return tuple(role[1:])


def pair_partitions_brute(n: int) -> List[Tuple[Tuple[int, int], ...]]:
    if n % 2:
        return []
    if n == 0:
        return [()]
    points = list(range(1, n + 1))

    def rec(rest: Tuple[int, ...]):
        if not rest:
            yield ()
            return
        first = rest[0]
        for idx in range(1, len(rest)):
            partner = rest[idx]
            remaining = rest[1:idx] + rest[idx + 1 :]
            for tail in rec(remaining):
                yield ((first, partner),) + tail

    return [tuple(sorted(m)) for m in rec(tuple(points))]


def crossings_pairs(pairs: Sequence[Tuple[int, int]]) -> int:
    c = 0
    for (a, b), (x, y) in itertools.combinations(pairs, 2):
        lo, hi = (a, b), (x, y)
        if lo[0] > hi[0]:
            lo, hi = hi, lo
        if lo[0] < hi[0] < lo[1] < hi[1]:
            c += 1
    return c


def nestings_pairs(pairs: Sequence[Tuple[int, int]]) -> int:
    c = 0
    for (a, b), (x, y) in itertools.combinations(pairs, 2):
        lo, hi = (a, b), (x, y)
        if lo[0] > hi[0]:
            lo, hi = hi, lo
        if lo[0] < hi[0] and hi[1] < lo[1]:
            c += 1
    return c


def noncrossing_partitions_brute(n: int) -> List[Tuple[Tuple[int, ...], ...]]:
    """Noncrossing set partitions: no block separates part of another block."""
    return _nc_filter(n)


def _nc_filter(n: int) -> List[Tuple[Tuple[int, ...], ...]]:
    good = []
    for p in all_partitions_brute(n):
        crossing = False
        for b1, b2 in itertools.combinations(p, 2):
            for a, c in itertools.combinations(b1, 2):
                inside = [x for x in b2 if a < x < c]
                outside = [x for x in b2 if x < a or x > c]
                if inside and outside:
                    crossing = True
                    break
            if crossing:
                break
        if not crossing:
            good.append(p)
    return good


def free_cumulants_to_moments(r: Sequence[Fraction], nmax: int) -> List[Fraction]:
    """Moments from free cumulants by summing over noncrossing partitions.

    r[k-1] is the k-th free cumulant; returns [m_1, ..., m_nmax].
    """
    out = []
    for n in range(1, nmax + 1):
        total = Fraction(0)
        for p in _nc_filter(n):
            prod = Fraction(1)
            for b in p:
                prod *= r[len(b) - 1]
            total += prod
        out.append(total)
    return out


def moments_of_atoms(atoms: Sequence[Tuple[Fraction, Fraction]], nmax: int) -> List[Fraction]:
    """[m_0..m_nmax] of a finite atomic measure given as (weight, position)."""
    return [sum(w * x**n for w, x in atoms) for n in range(nmax + 1)]
