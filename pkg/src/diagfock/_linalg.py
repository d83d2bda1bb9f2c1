"""Small exact linear algebra helpers over Fraction (and generic scalars).

Matrices are tuples of tuples (rows).  Nothing here is performance-critical:
sizes stay in the tens-to-hundreds, so plain Gaussian elimination over exact
rationals is the right tool.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

Matrix = Tuple[Tuple, ...]


def mat_from_rows(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(r) for r in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(Fraction(1) if i == j else Fraction(0) for j in range(n)) for i in range(n))


def zeros(n: int, m: int) -> Matrix:
    return tuple(tuple(Fraction(0) for _ in range(m)) for _ in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = len(b[0])
    inner = len(b)
    out = []
    for row in a:
        out_row = []
        for j in range(cols):
            s = None
            for k in range(inner):
                term = row[k] * b[k][j]
                s = term if s is None else s + term
            out_row.append(s if s is not None else Fraction(0))
        out.append(tuple(out_row))
    return tuple(out)


def mat_vec(a: Matrix, x: Sequence) -> Tuple:
    out = []
    for row in a:
        s = None
        for rv, xv in zip(row, x):
            term = rv * xv
            s = term if s is None else s + term
        out.append(s if s is not None else Fraction(0))
    return tuple(out)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def dot(x: Sequence, y: Sequence):
    s = None
    for a, b in zip(x, y):
        term = a * b
        s = term if s is None else s + term
    return s if s is not None else Fraction(0)


def mat_pow_entries(a: Matrix, kmax: int, i: int = 0, j: int = 0) -> List:
    """Entries (A^k)[i][j] for k = 1..kmax, computed by repeated multiplication."""
    out = []
    power = a
    for _ in range(kmax):
        out.append(power[i][j])
        power = mat_mul(power, a)
    return out


def is_symmetric(a: Matrix) -> bool:
    n = len(a)
    return all(a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n))


def solve_linear(a: Matrix, b: Sequence) -> Tuple:
    """Solve A x = b exactly for square nonsingular A (partial pivoting)."""
    n = len(a)
    aug = [list(row) + [val] for row, val in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular system")
        aug[col], aug[piv] = aug[piv], aug[col]
        d = aug[col][col]
        aug[col] = [x / d for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return tuple(row[n] for row in aug)


def ldlt_classify(a: Matrix) -> Tuple[str, int]:
    """Classify a symmetric rational matrix by exact LDL^T with symmetric pivoting.

    Returns (verdict, kernel_dim) where verdict is one of
    'positive_definite', 'positive_semidefinite', 'indefinite',
    'negative_semidefinite', 'negative_definite', 'zero'.

    At each step the largest-|value| nonzero diagonal entry is the pivot.  If
    the remaining diagonal is all zero but an off-diagonal entry survives, the
    matrix is indefinite (a symmetric matrix with zero diagonal and a nonzero
    entry has eigenvalues of both signs).
    """
    n = len(a)
    if n == 0:
        return ("zero", 0)
    if not is_symmetric(a):
        raise ValueError("ldlt_classify needs a symmetric matrix")
    m = [list(row) for row in a]
    active = list(range(n))
    pos = neg = 0
    while active:
        pivot_idx = None
        pivot_val = Fraction(0)
        for i in active:
            val = m[i][i]
            if val != 0 and (pivot_idx is None or abs(val) > abs(pivot_val)):
                pivot_idx = i
                pivot_val = val
        if pivot_idx is None:
            if any(m[i][j] != 0 for i in active for j in active if i != j):
                return ("indefinite", 0)
            break
        if pivot_val > 0:
            pos += 1
        else:
            neg += 1
        active.remove(pivot_idx)
        pivot_row = {j: m[pivot_idx][j] for j in active}
        for i in active:
            f = m[i][pivot_idx] / pivot_val
            if f == 0:
                continue
            for j in active:
                m[i][j] -= f * pivot_row[j]
        for i in active:
            m[i][pivot_idx] = Fraction(0)
            m[pivot_idx][i] = Fraction(0)
    kernel = n - pos - neg
    if pos and neg:
        return ("indefinite", kernel)
    if pos:
        return ("positive_definite" if kernel == 0 else "positive_semidefinite", kernel)
    if neg:
        return ("negative_definite" if kernel == 0 else "negative_semidefinite", kernel)
    return ("zero", kernel)


def independent_subset(gram: Matrix) -> List[int]:
    """Indices of a maximal linearly independent family, judged through its
    Gram matrix (vector i is dependent on previous picks iff adding it leaves
    the chosen principal minor singular)."""
    n = len(gram)
    chosen: List[int] = []
    # row-reduce the Gram rows restricted to chosen columns incrementally
    for i in range(n):
        trial = chosen + [i]
        sub = [[gram[r][c] for c in trial] for r in trial]
        if _rank(sub) == len(trial):
            chosen.append(i)
    return chosen


def _rank(rows: List[List[Fraction]]) -> int:
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    rank = 0
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, nrows) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        d = m[row][col]
        m[row] = [x / d for x in m[row]]
        for r in range(nrows):
            if r != row and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[row])]
        row += 1
        rank += 1
    return rank
