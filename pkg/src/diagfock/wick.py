"""Moment formulas: Wick sums over diagonally paired partitions.

Three layers, all exact:

  * ``gaussian_wick``: vacuum moments of field operators (creation plus
    annihilation) as a sum over diagonal pair partitions, weighted by
    q^cr t^nest on the top row and v^cr w^nest on the bar row, with inner
    products of the paired vectors.
  * ``word_vacuum_formula``: the vector obtained by applying an arbitrary
    creation/annihilation word to the vacuum, as a sum over compatible
    pairs-plus-singletons partitions with crossing/covering corrections and a
    residual tensor of the surviving creator vectors.
  * ``full_wick``: vacuum moments of general operators (field + gauge +
    scalar) as a sum over all diagonal partitions, with restricted crossing
    and nesting weights and matrix-chain block factors.

The same partition weights drive the scalar moment/cumulant transforms.
Every formula here has an operator-side counterpart in :mod:`diagfock.fock`;
tests hold the two routes against each other.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from . import _linalg
from .partitions import (
    DiagonalPartition,
    SetPartition,
    diagonal_partition_profiles,
    diagonal_partitions,
    diagonal_pair_partitions,
)
from .scalars import DeformationParams, ResourceLimitError
from .fock import (
    ANNIHILATE,
    CREATE,
    FockVector,
    GaugePair,
    VectorPair,
    annihilation_apply,
    creation_apply,
    field_apply,
    quadrabasic_apply,
)

MAX_WICK_N = 10


@dataclass(frozen=True)
class QuadrabasicOp:
    """One general operator: field part x, gauge pair g, scalars lam, lambar."""

    vector: VectorPair
    gauge: Optional[GaugePair]
    lam: Fraction = Fraction(0)
    lambar: Fraction = Fraction(0)

    @property
    def scalar(self) -> Fraction:
        return self.lam * self.lambar


def _dot(x: Sequence, y: Sequence):
    return _linalg.dot(x, y)


def gaussian_wick(xs: Sequence[VectorPair], params: DeformationParams):
    """Vacuum moment of field operators G(x_1) ... G(x_n).

    Sum over diagonal pair partitions: the top row pairs (l, r) contribute
    <xi_l, xi_r>, the bar row pairs <eta_l, eta_r>, and the partition weight
    is q^cr t^nest (top) times v^cr w^nest (bar).  Odd n gives 0.
    """
    n = len(xs)
    if n > MAX_WICK_N:
        raise ResourceLimitError(f"wick sum guarded at n <= {MAX_WICK_N}")
    if n % 2:
        return Fraction(0)
    total = Fraction(0)
    for dp in diagonal_pair_partitions(n):
        prod = Fraction(1)
        for l, r in dp.top.blocks:
            prod = prod * _dot(xs[l - 1].xi, xs[r - 1].xi)
            if prod == 0:
                break
        if prod == 0:
            continue
        for l, r in dp.bar.blocks:
            prod = prod * _dot(xs[l - 1].eta, xs[r - 1].eta)
            if prod == 0:
                break
        if prod == 0:
            continue
        crt, nst, crb, nsb = dp.weight_exponents()
        total = total + params.monomial(crt, nst, crb, nsb) * prod
    return total


def gaussian_fock_oracle(xs: Sequence[VectorPair], params: DeformationParams):
    """The same moment by applying the operators to the vacuum (independent route)."""
    f = FockVector.vacuum()
    for x in reversed(xs):
        f = field_apply(x, f, params)
    return f.vacuum_coefficient()


# -- creation/annihilation word expansion ------------------------------------------


def _matchings_into_creators(anns: Tuple[int, ...], creators: Tuple[int, ...]) -> Iterator[Dict[int, int]]:
    """All injective maps sending each annihilator position to a later creator."""
    if not anns:
        yield {}
        return
    head, rest = anns[0], anns[1:]
    for j in creators:
        if j > head:
            remaining = tuple(c for c in creators if c != j)
            for tail in _matchings_into_creators(rest, remaining):
                tail = dict(tail)
                tail[head] = j
                yield tail


def _row_partition(n: int, matching: Dict[int, int], creators: Tuple[int, ...]) -> SetPartition:
    used = set(matching.values())
    blocks: List[Tuple[int, ...]] = [(i, j) for i, j in matching.items()]
    blocks.extend((c,) for c in creators if c not in used)
    return SetPartition(n, blocks)


def word_vacuum_formula(tokens: Sequence[Tuple[str, VectorPair]], params: DeformationParams) -> FockVector:
    """The vector (token_1 ... token_n) vacuum as a combinatorial sum.

    Tokens are ('create', x) or ('annihilate', x), position 1 leftmost (acting
    last).  The sum runs over pairs of pairs-plus-singletons partitions whose
    rows share the annihilator positions as pair openers; each row weight is
    q^(cr + covered singletons) t^(nest + pairs-left-of-singleton) for the top
    (v, w for the bar), each pair (i, j) contributes the inner product of the
    annihilator vector at i with the creator vector at j, and the surviving
    creator vectors form the residual tensor, in position order.
    """
    n = len(tokens)
    if n > MAX_WICK_N:
        raise ResourceLimitError(f"word expansion guarded at n <= {MAX_WICK_N}")
    if any(kind not in (CREATE, ANNIHILATE) for kind, _ in tokens):
        raise ValueError("word_vacuum_formula tokens must be create/annihilate only")
    anns = tuple(i for i, (kind, _) in enumerate(tokens, start=1) if kind == ANNIHILATE)
    creators = tuple(i for i, (kind, _) in enumerate(tokens, start=1) if kind == CREATE)
    out = FockVector()
    top_rows = [(_row_partition(n, m, creators), m) for m in _matchings_into_creators(anns, creators)]
    for top, top_match in top_rows:
        top_scalar = Fraction(1)
        for i, j in top_match.items():
            top_scalar = top_scalar * _dot(tokens[i - 1][1].xi, tokens[j - 1][1].xi)
        if top_scalar == 0:
            continue
        top_weight = (params.q ** (top.crossings() + top.covered_singletons())) * (
            params.t ** (top.nestings() + top.singletons_after_pairs())
        )
        top_sing = top.singletons()
        for bar, bar_match in top_rows:
            bar_scalar = Fraction(1)
            for i, j in bar_match.items():
                bar_scalar = bar_scalar * _dot(tokens[i - 1][1].eta, tokens[j - 1][1].eta)
            if bar_scalar == 0:
                continue
            bar_weight = (params.v ** (bar.crossings() + bar.covered_singletons())) * (
                params.w ** (bar.nestings() + bar.singletons_after_pairs())
            )
            bar_sing = bar.singletons()
            coeff = top_weight * bar_weight * top_scalar * bar_scalar
            _accumulate_residual(out, coeff, [tokens[s - 1][1].xi for s in top_sing],
                                 [tokens[s - 1][1].eta for s in bar_sing])
    return out


def _accumulate_residual(out: FockVector, coeff, top_vecs: List[Sequence], bar_vecs: List[Sequence]) -> None:
    """Add coeff * (tensor of top_vecs) (x) (tensor of bar_vecs), expanded in basis words."""
    top_expansions = [[(a, xa) for a, xa in enumerate(vec) if xa != 0] for vec in top_vecs]
    bar_expansions = [[(b, yb) for b, yb in enumerate(vec) if yb != 0] for vec in bar_vecs]
    for top_choice in itertools.product(*top_expansions):
        top_word = tuple(a for a, _ in top_choice)
        top_coeff = coeff
        for _, xa in top_choice:
            top_coeff = top_coeff * xa
        for bar_choice in itertools.product(*bar_expansions):
            bar_word = tuple(b for b, _ in bar_choice)
            val = top_coeff
            for _, yb in bar_choice:
                val = val * yb
            out.add_term((top_word, bar_word), val)


def word_fock_oracle(tokens: Sequence[Tuple[str, VectorPair]], params: DeformationParams) -> FockVector:
    """The same vector by direct operator application."""
    f = FockVector.vacuum()
    for kind, x in reversed(tokens):
        if kind == CREATE:
            f = creation_apply(x, f)
        elif kind == ANNIHILATE:
            f = annihilation_apply(x, f, params)
        else:
            raise ValueError(f"bad token kind {kind!r}")
    return f


# -- general Wick formula ------------------------------------------------------------


def _block_factor(ops: Sequence[QuadrabasicOp], top_block, bar_block):
    """Cumulant factor of one conjugate block pair.

    Singleton blocks give lam * lambar of that position; larger blocks give a
    matrix-chain inner product on each row: the middle positions act by their
    gauge matrices on the vector of the greatest element, paired against the
    vector of the least element.
    """
    if len(top_block) == 1:
        op = ops[top_block[0] - 1]
        return op.lam * ops[bar_block[0] - 1].lambar
    chain = list(ops[top_block[-1] - 1].vector.xi)
    for idx in reversed(top_block[1:-1]):
        g = ops[idx - 1].gauge
        mat = g.top if g is not None else None
        if mat is None:
            return Fraction(0)
        chain = list(_linalg.mat_vec(mat, chain))
    top_part = _dot(ops[top_block[0] - 1].vector.xi, chain)
    if top_part == 0:
        return Fraction(0)
    chain = list(ops[bar_block[-1] - 1].vector.eta)
    for idx in reversed(bar_block[1:-1]):
        g = ops[idx - 1].gauge
        mat = g.bar if g is not None else None
        if mat is None:
            return Fraction(0)
        chain = list(_linalg.mat_vec(mat, chain))
    bar_part = _dot(ops[bar_block[0] - 1].vector.eta, chain)
    return top_part * bar_part


def full_wick(ops: Sequence[QuadrabasicOp], params: DeformationParams):
    """Vacuum moment of general operators as a diagonal-partition sum.

    Weight: q^rc t^rnest over the top row arcs, v^rc w^rnest over the bar row,
    with restricted (cross-block) crossing/nesting counts; block factors as in
    :func:`_block_factor`.
    """
    n = len(ops)
    if n > MAX_WICK_N:
        raise ResourceLimitError(f"wick sum guarded at n <= {MAX_WICK_N}")
    if n == 0:
        return Fraction(1)
    total = Fraction(0)
    for dp in diagonal_partitions(n):
        prod = Fraction(1)
        for top_block, bar_block in dp.conjugate_blocks():
            prod = prod * _block_factor(ops, top_block, bar_block)
            if prod == 0:
                break
        if prod == 0:
            continue
        total = total + params.monomial(*dp.weight_exponents()) * prod
    return total


def full_fock_oracle(ops: Sequence[QuadrabasicOp], params: DeformationParams):
    """The same moment by operator application (independent route)."""
    f = FockVector.vacuum()
    for op in reversed(ops):
        f = quadrabasic_apply(op.vector, op.gauge, op.scalar, f, params)
    return f.vacuum_coefficient()


# -- scalar moment/cumulant transforms -------------------------------------------------


def cumulants_to_moments(r: Sequence, params: DeformationParams) -> List:
    """m_n = sum over diagonal partitions of weight * product of r_{block size}.

    ``r`` lists r_1..r_N; returns m_1..m_N.  Only the top-row block sizes
    enter the product; the bar row contributes through the weight.
    """
    out = []
    for n in range(1, len(r) + 1):
        total = Fraction(0)
        for sizes, expo in diagonal_partition_profiles(n):
            prod = params.monomial(*expo)
            for s in sizes:
                prod = prod * r[s - 1]
                if prod == 0:
                    break
            total = total + prod
        out.append(total)
    return out


def moments_to_cumulants(m: Sequence, params: DeformationParams) -> List:
    """Triangular inversion of :func:`cumulants_to_moments`.

    r_n = m_n - sum over non-maximal diagonal partitions of weight * products
    of lower cumulants; the maximal partition (one block per row) carries
    weight 1, which makes the recursion exact.
    """
    r: List = []
    for n in range(1, len(m) + 1):
        acc = Fraction(0)
        for sizes, expo in diagonal_partition_profiles(n):
            if sizes == (n,):
                continue
            prod = params.monomial(*expo)
            for s in sizes:
                prod = prod * r[s - 1]
                if prod == 0:
                    break
            acc = acc + prod
        r.append(m[n - 1] - acc)
    return r
