"""
Exact rational linear algebra.

Vectors are tuples and matrices are tuples of row tuples.  Entries may be
``int`` or ``fractions.Fraction``; every result is exact.  Nothing in this
package goes through floating point except the SVG renderer.
"""

from fractions import Fraction
from math import gcd


class LinearAlgebraError(ValueError):
    pass


class InconsistentSystem(LinearAlgebraError):
    """Raised by :func:`solve_linear` when ``M x = b`` has no solution."""


class UnderdeterminedSystem(LinearAlgebraError):
    """Raised by :func:`solve_linear` when the solution is not unique."""


def vec(entries):
    return tuple(Fraction(x) for x in entries)


def mat(rows):
    rows = tuple(vec(r) for r in rows)
    if rows and any(len(r) != len(rows[0]) for r in rows):
        raise LinearAlgebraError("rows of different lengths")
    return rows


def dot(u, v):
    if len(u) != len(v):
        raise LinearAlgebraError("dimension mismatch: %d vs %d" % (len(u), len(v)))
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def transpose(M):
    return tuple(zip(*M))


def matmul(A, B):
    Bt = transpose(B)
    return tuple(tuple(dot(row, col) for col in Bt) for row in A)


def matvec(M, v):
    return tuple(dot(row, v) for row in M)


def identity(n):
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def primitive(v):
    """
    Divide an integer vector by the gcd of its entries.

    Signs are kept, so ``primitive((2, -4)) == (1, -2)``.
    """
    v = tuple(v)
    if any(Fraction(x).denominator != 1 for x in v):
        raise ValueError("primitive() needs an integer vector, got %r" % (v,))
    v = tuple(int(x) for x in v)
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero ray")
    return tuple(x // g for x in v)


def primitive_rational(v):
    """Scale a nonzero rational vector by a positive factor to a primitive integer vector."""
    v = vec(v)
    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    return primitive(tuple(int(x * den) for x in v))


def _echelon(M):
    """Row-reduce a copy of M; return (reduced rows, pivot columns)."""
    rows = [list(r) for r in mat(M)]
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(M):
    if not M:
        return 0
    return len(_echelon(M)[1])


def det(M):
    M = mat(M)
    n = len(M)
    if any(len(r) != n for r in M):
        raise LinearAlgebraError("det of a non-square matrix")
    rows = [list(r) for r in M]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            rows[c], rows[p] = rows[p], rows[c]
            sign = -sign
        piv = rows[c][c]
        result *= piv
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] / piv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return sign * result


def solve_linear(M, b):
    """
    Solve ``M x = b`` exactly.

    Raises :class:`InconsistentSystem` or :class:`UnderdeterminedSystem`
    when there is no unique solution.
    """
    M = mat(M)
    b = vec(b)
    if len(M) != len(b):
        raise LinearAlgebraError("matrix has %d rows but b has %d entries" % (len(M), len(b)))
    if not M:
        return ()
    n = len(M[0])
    rows, pivots = _echelon([list(r) + [x] for r, x in zip(M, b)])
    if n in pivots:
        raise InconsistentSystem("inconsistent")
    if len(pivots) < n:
        raise UnderdeterminedSystem("underdetermined")
    x = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        x[c] = rows[r][n]
    return tuple(x)


def inverse(M):
    M = mat(M)
    n = len(M)
    rows, pivots = _echelon([list(r) + list(e) for r, e in zip(M, identity(n))])
    if pivots[:n] != list(range(n)):
        raise LinearAlgebraError("singular matrix")
    return tuple(tuple(r[n:]) for r in rows)


def nullspace(M, ncols=None):
    """Basis of the right kernel of M, as primitive integer vectors."""
    M = mat(M)
    if ncols is None:
        ncols = len(M[0])
    if not M:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    rows, pivots = _echelon(M)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r, c in enumerate(pivots):
            x[c] = -rows[r][f]
        basis.append(primitive_rational(x))
    return basis


def is_symmetric(M):
    M = mat(M)
    return all(len(r) == len(M) for r in M) and all(
        M[i][j] == M[j][i] for i in range(len(M)) for j in range(i))


def is_positive_definite(M):
    """Sylvester's criterion: every leading principal minor is positive."""
    M = mat(M)
    if not is_symmetric(M):
        raise LinearAlgebraError("not symmetric")
    n = len(M)
    return all(det([r[:k] for r in M[:k]]) > 0 for k in range(1, n + 1))


def smith_invariants(M, ncols=None):
    """
    Invariant factors of an integer matrix, padded with zeros to the number
    of columns.

    Rows are relations and columns generators, so the cokernel (the
    abelian group presented) is the direct sum of Z/d over the returned d;
    a 0 is a free summand and a 1 is trivial.
    """
    A = [[int(x) for x in row] for row in M]
    if ncols is None:
        ncols = len(A[0]) if A else 0
    A = [row for row in A if any(row)]
    m = len(A)
    diag = []
    t = 0
    while t < min(m, ncols):
        # move the smallest nonzero entry of the remaining block to (t, t)
        entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, ncols) if A[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    done = False
            for j in range(t + 1, ncols):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    done = False
            if done:
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, ncols)
                            if A[i][j] % p), None)
                if bad is None:
                    break
                # fold a non-divisible row into row t and keep reducing
                A[t] = [a + b for a, b in zip(A[t], A[bad[0]])]
                continue
            entries = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
            entries += [(abs(A[t][j]), t, j) for j in range(t, ncols) if A[t][j]]
            _, i, j = min(entries)
            A[t], A[i] = A[i], A[t]
            for row in A:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    return diag + [0] * (ncols - len(diag))


def abelian_invariants(M, ncols=None):
    """Return ``(free_rank, torsion)`` of the abelian group presented by M."""
    inv = smith_invariants(M, ncols)
    return inv.count(0), [d for d in inv if d > 1]
