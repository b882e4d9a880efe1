"""
The cluster category of type A_n as diagonals of an (n+3)-gon.

Vertices of the polygon are numbered 1..n+3.  A diagonal is a sorted pair
``(i, j)``; boundary edges are the zero object and never appear as
indecomposables.  Triangulations are the basic maximal rigid objects, and
a flip is a mutation.

Suspension acts by rotating every endpoint by -1, and

    dim Hom(a, b) = 1  if a crosses sigma^-1(b), else 0.

:func:`ar_mesh_hom_dim` computes the same numbers by knitting on the
universal cover Z A_n of the AR quiver and is kept as an independent check.
"""

from collections import Counter, deque
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations


def _norm(N, v):
    return (v - 1) % N + 1


def diagonal(N, i, j):
    i, j = sorted((_norm(N, i), _norm(N, j)))
    if j - i in (0, 1, N - 1):
        raise ValueError("{%d, %d} is not a diagonal of the %d-gon" % (i, j, N))
    return (i, j)


def is_boundary(N, i, j):
    i, j = sorted((_norm(N, i), _norm(N, j)))
    return j - i in (1, N - 1)


def all_diagonals(n):
    N = n + 3
    return [(i, j) for i in range(1, N + 1) for j in range(i + 2, N + 1) if not (i == 1 and j == N)]


def label(d, N=None):
    """Compact label: ``(2, 4) -> "24"``; vertices >= 10 use a comma."""
    i, j = d
    if N is not None and N >= 10:
        return "%d,%d" % (i, j)
    return "%d%d" % (i, j)


def crossing(a, b):
    (i, j), (k, l) = a, b
    return i < k < j < l or k < i < l < j


def sigma(N, d):
    return diagonal(N, d[0] - 1, d[1] - 1)


def sigma_inv(N, d):
    return diagonal(N, d[0] + 1, d[1] + 1)


def hom_dim(N, a, b):
    return 1 if crossing(a, sigma_inv(N, b)) else 0


def _cover_diagonal(N, p, q):
    """Z A_n vertex (p, q) -> diagonal {p, p+q+1}."""
    return diagonal(N, p, p + q + 1)


@lru_cache(maxsize=None)
def ar_mesh_hom_table(n):
    """
    dim Hom in C(A_n) from additive knitting on Z A_n.

    Z A_n has vertices (p, q), 1 <= q <= n, arrows (p, q) -> (p, q+1) and
    (p, q) -> (p+1, q-1), and translation tau(p, q) = (p-1, q).  Starting
    from a lift of X with value 1, each later vertex gets
    max(0, sum over incoming arrows - value at tau).  Hom in the orbit
    category is the sum of these values over all lifts of Y.
    """
    N = n + 3
    table = {}
    for q0 in range(1, n + 1):
        h = {(0, q0): 1}
        t0 = q0
        zero_run = 0
        t = t0
        while zero_run < 2:
            t += 1
            layer_nonzero = False
            for q in range(1, n + 1):
                if (t - q) % 2:
                    continue
                p = (t - q) // 2
                total = h.get((p, q - 1), 0) + h.get((p - 1, q + 1), 0) - h.get((p - 1, q), 0)
                value = max(0, total)
                if value:
                    h[(p, q)] = value
                    layer_nonzero = True
            zero_run = 0 if layer_nonzero else zero_run + 1
        X = _cover_diagonal(N, 0, q0)
        # every diagonal is a rotation of one with p = 0; rotate results accordingly
        for shift in range(N):
            src = diagonal(N, X[0] + shift, X[1] + shift)
            acc = Counter()
            for (p, q), v in h.items():
                acc[diagonal(N, p + shift, p + q + 1 + shift)] += v
            for b in all_diagonals(n):
                table[(src, b)] = acc.get(b, 0)
    return table


def ar_mesh_hom_dim(n, a, b):
    return ar_mesh_hom_table(n)[(a, b)]


def ar_quiver_arrows(n):
    """Irreducible maps: rotate one endpoint forward by one step."""
    N = n + 3
    out = []
    for (i, j) in all_diagonals(n):
        for (k, l) in ((i, j + 1), (i + 1, j)):
            if not is_boundary(N, k, l):
                out.append(((i, j), diagonal(N, k, l)))
    return sorted(out)


def is_triangulation(n, T):
    T = set(T)
    if len(T) != n:
        return False
    if any(crossing(a, b) for a, b in combinations(sorted(T), 2)):
        return False
    return all(any(crossing(d, t) for t in T) or d in T for d in all_diagonals(n))


def all_triangulations(n):
    """Every triangulation of the (n+3)-gon, by backtracking; Catalan(n+1) of them."""
    if n < 1:
        raise ValueError("n must be >= 1")
    diags = all_diagonals(n)
    out = []

    def extend(start, chosen):
        if len(chosen) == n:
            out.append(tuple(chosen))
            return
        for k in range(start, len(diags)):
            d = diags[k]
            if not any(crossing(d, c) for c in chosen):
                extend(k + 1, chosen + [d])

    extend(0, [])
    return sorted(out)


@dataclass(frozen=True)
class Flip:
    source: tuple
    target: tuple
    replaced: tuple
    replacement: tuple
    b_minus: tuple
    b_plus: tuple


def flip(n, T, d):
    """
    Flip diagonal ``d`` of triangulation ``T``.

    With the quadrilateral a < b < c < e (cyclically) and d = {a, c},
    d* = {b, e}, the exchange triangles are

        d  -> bc + ea -> d*  (middle term ``b_minus``)
        d* -> ab + ce -> d   (middle term ``b_plus``)

    with boundary edges dropped.
    """
    N = n + 3
    T = tuple(sorted(T))
    if d not in T:
        raise ValueError("%r is not in the triangulation" % (d,))
    edges = set(T)

    def joined(u, v):
        u, v = _norm(N, u), _norm(N, v)
        return is_boundary(N, u, v) or tuple(sorted((u, v))) in edges

    a, c = d
    inside = [v for v in range(a + 1, c) if joined(a, v) and joined(v, c)]
    outside = [v for v in list(range(c + 1, N + 1)) + list(range(1, a)) if joined(a, v) and joined(v, c)]
    if len(inside) != 1 or len(outside) != 1:
        raise ValueError("%r is not a triangulation" % (T,))
    b, e = inside[0], outside[0]
    star = diagonal(N, b, e)
    keep = lambda pairs: tuple(sorted(diagonal(N, u, v) for u, v in pairs if not is_boundary(N, u, v)))
    b_minus = keep([(b, c), (e, a)])
    b_plus = keep([(a, b), (c, e)])
    target = tuple(sorted((edges - {d}) | {star}))
    return Flip(T, target, d, star, b_minus, b_plus)


def flip_graph(n):
    tris = all_triangulations(n)
    return {T: [flip(n, T, d) for d in T] for T in tris}


def transport(coeffs, f):
    """
    Carry a class in K0(add source) to K0(add target) across one flip.

    ``coeffs`` maps diagonals of ``f.source`` to integers; the piecewise
    linear rule picks the ``b_plus`` triangle when the coefficient of the
    flipped diagonal is >= 0 and ``b_minus`` otherwise.
    """
    out = Counter({k: v for k, v in coeffs.items() if k != f.replaced})
    a = coeffs.get(f.replaced, 0)
    middle = f.b_plus if a >= 0 else f.b_minus
    for m in middle:
        out[m] += a
    out[f.replacement] -= a
    return {k: v for k, v in out.items() if v}


@dataclass
class PolygonModel:
    n: int
    reference: tuple = None
    index_table: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.N = self.n + 3
        self.triangulations = all_triangulations(self.n)
        if self.reference is None:
            self.reference = self.triangulations[0]
        self.reference = tuple(sorted(self.reference))
        if not is_triangulation(self.n, self.reference):
            raise ValueError("reference is not a triangulation")
        self._flips = {T: {f.replaced: f for f in (flip(self.n, T, d) for d in T)}
                       for T in self.triangulations}
        self._tree = self._bfs_tree()
        for d in all_diagonals(self.n):
            self.index_table[d] = self._index(d)

    def flips(self, T):
        return list(self._flips[tuple(sorted(T))].values())

    def hom_dim(self, a, b):
        return hom_dim(self.N, a, b)

    def _bfs_tree(self):
        """Parent pointers towards the reference; neighbours visited in lexicographic order."""
        parent = {self.reference: None}
        queue = deque([self.reference])
        while queue:
            T = queue.popleft()
            for f in sorted(self._flips[T].values(), key=lambda f: f.target):
                if f.target not in parent:
                    parent[f.target] = self._flips[f.target][f.replacement]
                    queue.append(f.target)
        return parent

    def path_to_reference(self, T):
        out = []
        T = tuple(sorted(T))
        while self._tree[T] is not None:
            f = self._tree[T]
            out.append(f)
            T = f.target
        return out

    def transport_along(self, d, flips):
        """Index of ``d`` wrt the last triangulation of the path, starting from a triangulation containing it."""
        if not flips:
            raise ValueError("empty path")
        if d not in flips[0].source:
            raise ValueError("path must start at a triangulation containing %r" % (d,))
        coeffs = {d: 1}
        T = flips[0].source
        for f in flips:
            if f.source != T:
                raise ValueError("flips are not composable")
            coeffs = transport(coeffs, f)
            T = f.target
        return coeffs

    def _index(self, d):
        if d in self.reference:
            return self.basis_vector({d: 1})
        start = next(T for T in self.triangulations if d in T)
        return self.basis_vector(self.transport_along(d, self.path_to_reference(start)))

    def basis_vector(self, coeffs):
        return tuple(coeffs.get(r, 0) for r in self.reference)

    def index_vector(self, d):
        return self.index_table[d]

    def cartan_matrix(self, T):
        T = tuple(sorted(T))
        return tuple(tuple(self.hom_dim(a, b) for b in T) for a in T)
