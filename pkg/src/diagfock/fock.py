"""Operators on the doubled deformed Fock space.

Level n of the space is spanned by pairs of words of equal length n: a word
over a basis of the top one-particle space H (dimension d) together with a
word over the bar space H-bar (dimension d-bar).  The vacuum is the empty
pair.  Vectors are sparse dicts mapping (top_word, bar_word) to exact scalars
(Fraction, or Poly when the deformation parameters are symbolic).

Operator actions (x = xi (x) eta a pair of one-particle vectors):

  creation      prefixes xi to the top word and eta to the bar word;
  annihilation  contracts position i of the top word against xi with weight
                q^(i-1) t^(n-i), and independently position j of the bar word
                against eta with weight v^(j-1) w^(n-j), deleting both;
  gauge         replaces letter i of the top word by T(letter) moved to the
                front, with the same q/t weights, tensored with the analogous
                v/w sum over the bar word;
  scalar        multiplies by lambda * lambda-bar.

Annihilation kills the vacuum.  With t = w = 1 these reduce to the familiar
twisted ladder operators; the t^N-type commutation relation is exercised in
tests level by level (the relation sends level n to level n, so no truncation
error is involved).

One-particle spaces may carry a nonstandard inner product through an optional
``metric`` pair (G_top, G_bar) of symmetric positive matrices; this is what
lets step functions with interval lengths as weights live in an exact
rational model.  Only annihilation and inner products consult the metric.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import _linalg
from .scalars import DeformationParams, Poly, ResourceLimitError

Word = Tuple[int, ...]
WordPair = Tuple[Word, Word]

DEFAULT_WORD_CAP = 12


@dataclass(frozen=True)
class VectorPair:
    """A simple tensor xi (x) eta of one-particle vectors (rational coords)."""

    xi: Tuple[Fraction, ...]
    eta: Tuple[Fraction, ...]

    @classmethod
    def of(cls, xi: Sequence, eta: Sequence) -> "VectorPair":
        return cls(tuple(Fraction(a) for a in xi), tuple(Fraction(b) for b in eta))


@dataclass(frozen=True)
class GaugePair:
    """A pair of one-particle operators (T on H, T-bar on H-bar)."""

    top: Tuple[Tuple[Fraction, ...], ...]
    bar: Tuple[Tuple[Fraction, ...], ...]

    @classmethod
    def of(cls, top: Sequence[Sequence], bar: Sequence[Sequence]) -> "GaugePair":
        t = tuple(tuple(Fraction(x) for x in row) for row in top)
        b = tuple(tuple(Fraction(x) for x in row) for row in bar)
        for m in (t, b):
            if any(len(row) != len(m) for row in m):
                raise ValueError("gauge matrices must be square")
        return cls(t, b)


Metric = Optional[Tuple[Optional[_linalg.Matrix], Optional[_linalg.Matrix]]]


class FockVector:
    """Sparse vector on the doubled Fock space: dict (top word, bar word) -> scalar."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[WordPair, object]] = None):
        self.terms: Dict[WordPair, object] = {}
        if terms:
            for key, val in terms.items():
                if val == 0:
                    continue
                top, bar = key
                if len(top) != len(bar):
                    raise ValueError("top and bar words must have equal length")
                self.terms[(tuple(top), tuple(bar))] = val

    @classmethod
    def vacuum(cls) -> "FockVector":
        return cls({((), ()): Fraction(1)})

    @classmethod
    def zero(cls) -> "FockVector":
        return cls()

    def add_term(self, key: WordPair, val) -> None:
        s = self.terms.get(key, 0) + val
        if s == 0:
            self.terms.pop(key, None)
        else:
            self.terms[key] = s

    def __add__(self, other: "FockVector") -> "FockVector":
        out = FockVector()
        out.terms = dict(self.terms)
        for key, val in other.terms.items():
            out.add_term(key, val)
        return out

    def __sub__(self, other: "FockVector") -> "FockVector":
        out = FockVector()
        out.terms = dict(self.terms)
        for key, val in other.terms.items():
            out.add_term(key, -val)
        return out

    def scale(self, c) -> "FockVector":
        if c == 0:
            return FockVector()
        out = FockVector()
        out.terms = {key: c * val for key, val in self.terms.items()}
        return out

    def vacuum_coefficient(self):
        return self.terms.get(((), ()), Fraction(0))

    def levels(self) -> Tuple[int, ...]:
        return tuple(sorted({len(k[0]) for k in self.terms}))

    def __eq__(self, other):
        return isinstance(other, FockVector) and self.terms == other.terms

    def __repr__(self):
        return f"FockVector({self.terms!r})"


def _metric_image(vec: Sequence, g: Optional[_linalg.Matrix]) -> Tuple:
    """Vector of pairings <vec, e_j>: plain coordinates, or G @ vec under a metric."""
    if g is None:
        return tuple(vec)
    return _linalg.mat_vec(g, vec)


def _annihilate_terms(word: Word, paired: Sequence, wa, wb) -> List[Tuple[Word, object]]:
    """Single-row annihilation: sum_i wa^(i-1) wb^(n-i) <vec, e_{word_i}> drop i.

    ``paired`` is the precomputed pairing vector <vec, e_.>, and wa/wb the two
    deformation letters for this row.
    """
    n = len(word)
    out = []
    for i in range(1, n + 1):
        coeff = paired[word[i - 1]]
        if coeff == 0:
            continue
        weight = (wa ** (i - 1)) * (wb ** (n - i))
        rest = word[: i - 1] + word[i:]
        out.append((rest, weight * coeff))
    return out


def _gauge_terms(word: Word, mat: Tuple[Tuple[Fraction, ...], ...], wa, wb) -> List[Tuple[Word, object]]:
    """Single-row gauge: sum_i wa^(i-1) wb^(n-i) T(e_{word_i}) moved to front."""
    n = len(word)
    out = []
    for i in range(1, n + 1):
        weight = (wa ** (i - 1)) * (wb ** (n - i))
        rest = word[: i - 1] + word[i:]
        col = word[i - 1]
        for a in range(len(mat)):
            entry = mat[a][col]
            if entry == 0:
                continue
            out.append(((a,) + rest, weight * entry))
    return out


def creation_apply(x: VectorPair, f: FockVector) -> FockVector:
    out = FockVector()
    for (top, bar), c in f.terms.items():
        for a, xa in enumerate(x.xi):
            if xa == 0:
                continue
            for b, yb in enumerate(x.eta):
                if yb == 0:
                    continue
                out.add_term(((a,) + top, (b,) + bar), xa * yb * c)
    return out


def annihilation_apply(
    x: VectorPair, f: FockVector, params: DeformationParams, metric: Metric = None
) -> FockVector:
    g_top = metric[0] if metric else None
    g_bar = metric[1] if metric else None
    paired_top = _metric_image(x.xi, g_top)
    paired_bar = _metric_image(x.eta, g_bar)
    out = FockVector()
    for (top, bar), c in f.terms.items():
        if not top:
            continue
        top_terms = _annihilate_terms(top, paired_top, params.q, params.t)
        if not top_terms:
            continue
        bar_terms = _annihilate_terms(bar, paired_bar, params.v, params.w)
        for wt, ct in top_terms:
            for wb, cb in bar_terms:
                out.add_term((wt, wb), c * ct * cb)
    return out


def gauge_apply(g: GaugePair, f: FockVector, params: DeformationParams) -> FockVector:
    out = FockVector()
    for (top, bar), c in f.terms.items():
        if not top:
            continue
        top_terms = _gauge_terms(top, g.top, params.q, params.t)
        if not top_terms:
            continue
        bar_terms = _gauge_terms(bar, g.bar, params.v, params.w)
        for wt, ct in top_terms:
            for wb, cb in bar_terms:
                out.add_term((wt, wb), c * ct * cb)
    return out


# -- operator words ------------------------------------------------------------

CREATE = "create"
ANNIHILATE = "annihilate"
GAUGE = "gauge"
SCALAR = "scalar"


def apply_token(token, f: FockVector, params: DeformationParams, metric: Metric = None) -> FockVector:
    kind, payload = token
    if kind == CREATE:
        return creation_apply(payload, f)
    if kind == ANNIHILATE:
        return annihilation_apply(payload, f, params, metric)
    if kind == GAUGE:
        return gauge_apply(payload, f, params)
    if kind == SCALAR:
        return f.scale(payload)
    raise ValueError(f"unknown token kind {kind!r}")


def field_apply(x: VectorPair, f: FockVector, params: DeformationParams, metric: Metric = None) -> FockVector:
    """(creation + annihilation) applied to f."""
    return creation_apply(x, f) + annihilation_apply(x, f, params, metric)


def quadrabasic_apply(
    x: VectorPair,
    g: Optional[GaugePair],
    lam,
    f: FockVector,
    params: DeformationParams,
    metric: Metric = None,
) -> FockVector:
    """(creation + annihilation + gauge + lam) applied to f; lam is the
    combined scalar (lambda * lambda-bar)."""
    out = creation_apply(x, f) + annihilation_apply(x, f, params, metric)
    if g is not None:
        out = out + gauge_apply(g, f, params)
    if lam != 0:
        out = out + f.scale(lam)
    return out


def apply_word(
    tokens: Sequence, params: DeformationParams, metric: Metric = None, start: Optional[FockVector] = None
) -> FockVector:
    """Apply a product of tokens to a vector (rightmost token acts first)."""
    f = FockVector.vacuum() if start is None else start
    for token in reversed(tokens):
        f = apply_token(token, f, params, metric)
    return f


def vacuum_expectation(
    tokens: Sequence, params: DeformationParams, metric: Metric = None, cap: int = DEFAULT_WORD_CAP
):
    """<vacuum, tokens vacuum>: the empty-word coefficient after application."""
    if len(tokens) > cap:
        raise ResourceLimitError(f"operator word longer than cap {cap}")
    return apply_word(tokens, params, metric).vacuum_coefficient()


# -- deformed inner product ------------------------------------------------------


@lru_cache(maxsize=None)
def _perm_inversions(n: int) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    out = []
    for sigma in itertools.permutations(range(n)):
        inv = sum(
            1
            for i in range(n)
            for j in range(i + 1, n)
            if sigma[i] > sigma[j]
        )
        out.append((sigma, inv))
    return tuple(out)


def sym_inner_words(u: Word, x: Word, a, b, g: Optional[_linalg.Matrix] = None):
    """<e_u, P^(n)_{a,b} e_x> where P = sum_sigma a^inv(sigma) b^(binom-inv) U(sigma)."""
    n = len(u)
    if n != len(x):
        return Fraction(0)
    if n == 0:
        return Fraction(1)
    total_pairs = n * (n - 1) // 2
    acc = None
    for sigma, inv in _perm_inversions(n):
        prod = Fraction(1)
        ok = True
        for i in range(n):
            ui = u[i]
            xi = x[sigma[i]]
            if g is None:
                if ui != xi:
                    ok = False
                    break
            else:
                entry = g[ui][xi]
                if entry == 0:
                    ok = False
                    break
                prod = prod * entry
        if not ok:
            continue
        term = (a ** inv) * (b ** (total_pairs - inv)) * prod
        acc = term if acc is None else acc + term
    return acc if acc is not None else Fraction(0)


def deformed_inner(f: FockVector, h: FockVector, params: DeformationParams, metric: Metric = None):
    """The four-parameter inner product: levels pair off, and within a level the
    top rows pair through P_{q,t} while the bar rows pair through P_{v,w}."""
    g_top = metric[0] if metric else None
    g_bar = metric[1] if metric else None
    total = Fraction(0)
    by_level_f: Dict[int, List[Tuple[WordPair, object]]] = {}
    for key, c in f.terms.items():
        by_level_f.setdefault(len(key[0]), []).append((key, c))
    by_level_h: Dict[int, List[Tuple[WordPair, object]]] = {}
    for key, c in h.terms.items():
        by_level_h.setdefault(len(key[0]), []).append((key, c))
    for n, fterms in by_level_f.items():
        hterms = by_level_h.get(n)
        if not hterms:
            continue
        for (ftop, fbar), fc in fterms:
            for (htop, hbar), hc in hterms:
                top_part = sym_inner_words(ftop, htop, params.q, params.t, g_top)
                if top_part == 0:
                    continue
                bar_part = sym_inner_words(fbar, hbar, params.v, params.w, g_bar)
                if bar_part == 0:
                    continue
                total = total + fc * hc * top_part * bar_part
    return total


def symmetrizer_matrix(n: int, a, b, d: int):
    """Matrix of P^(n)_{a,b} on words of length n over a d-letter basis (lex order)."""
    if d ** n > 800:
        raise ResourceLimitError("symmetrizer matrix would exceed the size guard")
    words = list(itertools.product(range(d), repeat=n))
    index = {wd: i for i, wd in enumerate(words)}
    total_pairs = n * (n - 1) // 2
    size = len(words)
    rows = [[Fraction(0)] * size for _ in range(size)]
    for sigma, inv in _perm_inversions(n):
        weight = (a ** inv) * (b ** (total_pairs - inv))
        for col, wd in enumerate(words):
            permuted = tuple(wd[sigma[i]] for i in range(n))
            rows[index[permuted]][col] += weight
    return tuple(tuple(r) for r in rows)


def positivity_check(n: int, a: Fraction, b: Fraction, d: int) -> Tuple[str, int]:
    """Exact definiteness verdict for the level-n symmetrizer on a d-dim space."""
    mat = symmetrizer_matrix(n, Fraction(a), Fraction(b), d)
    return _linalg.ldlt_classify(mat)


# -- single-row operators (used by commutation checks and factorization tests) ---


def single_create(vec: Sequence, f: Dict[Word, object]) -> Dict[Word, object]:
    out: Dict[Word, object] = {}
    for word, c in f.items():
        for a, xa in enumerate(vec):
            if xa == 0:
                continue
            key = (a,) + word
            s = out.get(key, 0) + Fraction(xa) * c
            if s == 0:
                out.pop(key, None)
            else:
                out[key] = s
    return out


def single_annihilate(vec: Sequence, f: Dict[Word, object], a, b, g=None) -> Dict[Word, object]:
    paired = _metric_image([Fraction(x) for x in vec], g)
    out: Dict[Word, object] = {}
    for word, c in f.items():
        for rest, coeff in _annihilate_terms(word, paired, a, b):
            s = out.get(rest, 0) + coeff * c
            if s == 0:
                out.pop(rest, None)
            else:
                out[rest] = s
    return out


def check_commutation_single(xi1, xi2, a, b, d: int, maxlevel: int = 3) -> bool:
    """Verify the single-row relation on every basis word up to maxlevel:

        a(xi1) a*(xi2) - a a*(xi2) a(xi1)  =  <xi1, xi2> b^n   on level n,

    the twisted ladder relation with twist a and a b^N multiplier that fixes
    the vacuum (b^0 = 1).  The relation maps level n to level n, so the check
    is exact on every level; maxlevel only bounds the basis swept.
    """
    xi1 = tuple(Fraction(x) for x in xi1)
    xi2 = tuple(Fraction(x) for x in xi2)
    inner = sum(p * r for p, r in zip(xi1, xi2))
    for n in range(0, maxlevel + 1):
        for word in itertools.product(range(d), repeat=n):
            f = {tuple(word): Fraction(1)}
            lhs_terms = single_annihilate(xi1, single_create(xi2, f), a, b)
            rhs_twist = single_create(xi2, single_annihilate(xi1, f, a, b))
            lhs = dict(lhs_terms)
            for key, val in rhs_twist.items():
                s = lhs.get(key, 0) - a * val
                if s == 0:
                    lhs.pop(key, None)
                else:
                    lhs[key] = s
            expected = {}
            coeff = inner * (b ** n)
            if coeff != 0:
                expected[tuple(word)] = coeff
            if lhs != expected:
                return False
    return True


def check_commutation_tensor(
    x1: VectorPair, x2: VectorPair, params: DeformationParams, d: int, dbar: int, maxlevel: int = 3
) -> bool:
    """Verify the doubled commutation relation at t = w = 1 on all basis pairs:

        A(x1) A*(x2) - qv A*(x2) A(x1)
          = q <eta1,eta2> (a* a on top) + v <xi1,xi2> (a* a on bar)
            + <xi1,xi2><eta1,eta2> Id.
    """
    if params.t != 1 or params.w != 1:
        raise ValueError("the doubled commutation relation needs t = w = 1")
    q, v = params.q, params.v
    inner_top = sum(p * r for p, r in zip(x1.xi, x2.xi))
    inner_bar = sum(p * r for p, r in zip(x1.eta, x2.eta))
    for n in range(0, maxlevel + 1):
        for top in itertools.product(range(d), repeat=n):
            for bar in itertools.product(range(dbar), repeat=n):
                f = FockVector({(top, bar): Fraction(1)})
                lhs = annihilation_apply(x1, creation_apply(x2, f), params)
                lhs = lhs - creation_apply(x2, annihilation_apply(x1, f, params)).scale(q * v)
                # top remainder: q <eta1,eta2> a*(xi2) a(xi1) acting on the top row only
                rhs = FockVector()
                if inner_bar != 0:
                    ftop = {top: Fraction(1)}
                    moved = single_create(x2.xi, single_annihilate(x1.xi, ftop, q, Fraction(1)))
                    for wtop, c in moved.items():
                        rhs.add_term((wtop, bar), q * inner_bar * c)
                if inner_top != 0:
                    fbar = {bar: Fraction(1)}
                    moved = single_create(x2.eta, single_annihilate(x1.eta, fbar, v, Fraction(1)))
                    for wbar, c in moved.items():
                        rhs.add_term((top, wbar), v * inner_top * c)
                if inner_top * inner_bar != 0:
                    rhs.add_term((top, bar), inner_top * inner_bar)
                if lhs != rhs:
                    return False
    return True


def gauge_adjoint_check(
    g: GaugePair, params: DeformationParams, d: int, dbar: int, maxlevel: int = 3
) -> bool:
    """<p f, h> = <f, p' h> in the deformed inner product, p' built from the
    transposed matrices.  Swept exactly over all basis word pairs."""
    g_adj = GaugePair(_linalg.transpose(g.top), _linalg.transpose(g.bar))
    for n in range(1, maxlevel + 1):
        basis = [
            FockVector({(top, bar): Fraction(1)})
            for top in itertools.product(range(d), repeat=n)
            for bar in itertools.product(range(dbar), repeat=n)
        ]
        images = [gauge_apply(g, f, params) for f in basis]
        images_adj = [gauge_apply(g_adj, f, params) for f in basis]
        for i, f in enumerate(basis):
            for j, h in enumerate(basis):
                left = deformed_inner(images[i], h, params)
                right = deformed_inner(f, images_adj[j], params)
                if left != right:
                    return False
    return True


# -- creation operator norm -------------------------------------------------------


def qt_number_float(n: int, q: float, t: float) -> float:
    return sum(q ** (i - 1) * t ** (n - i) for i in range(1, n + 1))


def empirical_creation_norm(q: float, t: float, nmax: int = 200) -> float:
    """sup over levels of the one-row creation norm ratio sqrt([n]_{q,t})."""
    return max(math.sqrt(qt_number_float(n, q, t)) for n in range(1, nmax + 1))


def creation_norm_formula(q: float, t: float) -> Tuple[float, str]:
    """Closed-form one-row creation norm (per unit vector) with branch label.

    Defined for -t <= q <= t <= 1, t > 0, excluding q = t = 1 (unbounded).
    The mixed 0 < q < t < 1 branch takes the level maximizing [n]_{q,t}: the
    last n with [n+1] >= [n] is floor(log((1-q)/(1-t)) / log(t/q)), clamped
    at 0 so the sup is never taken over an empty range.
    """
    q = float(q)
    t = float(t)
    if not (0 < t <= 1 and -t <= q <= t):
        raise ValueError("norm formula needs -t <= q <= t and 0 < t <= 1")
    if q <= 0:
        return 1.0, "nonpositive_twist"
    if q == t == 1:
        raise ValueError("creation operator is unbounded at q = t = 1")
    if t == 1:
        return 1.0 / math.sqrt(1.0 - q), "geometric"
    if q == t:
        nstar = math.floor(t / (1.0 - t))
        return math.sqrt((nstar + 1) * t ** nstar), "equal_parameters"
    nhat = math.floor((math.log(1.0 - q) - math.log(1.0 - t)) / (math.log(t) - math.log(q)))
    nhat = max(nhat, 0)
    return math.sqrt((t ** (nhat + 1) - q ** (nhat + 1)) / (t - q)), "mixed"


def creation_norm_check(q, t, nmax: int = 200, tol: float = 1e-12) -> Tuple[bool, float, float, str]:
    """Compare the branch formula against the empirical level sup."""
    value, branch = creation_norm_formula(float(q), float(t))
    emp = empirical_creation_norm(float(q), float(t), nmax)
    return (abs(value - emp) <= tol * max(1.0, abs(value)), emp, value, branch)
