"""Finite abstract simplicial complexes with a fixed orientation convention.

Simplices are strictly increasing vertex tuples; the orientation of every
simplex is the sorted order with sign +1, and boundary signs are the usual
alternating (-1)^position. Within each dimension simplices are indexed in
lexicographic order, so every matrix in the package is reproducible across
runs. All chain arithmetic is exact rational.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .errors import DimOutOfRange, EmptyInput, OrientationConflict, SimplexNotFound
from .ratlin import Matrix

ZERO = Fraction(0)
ONE = Fraction(1)


class SimplicialComplex:
    """Oriented abstract simplicial complex with deterministic indexing.

    Immutable after construction; build through :func:`build_complex` (which
    closes under faces) rather than directly.
    """

    __slots__ = ("vertices", "simplices_by_dim", "dim", "_index")

    def __init__(self, simplices_by_dim):
        self.simplices_by_dim = tuple(tuple(level) for level in simplices_by_dim)
        if not self.simplices_by_dim or not self.simplices_by_dim[0]:
            raise EmptyInput("complex needs at least one vertex")
        self.dim = len(self.simplices_by_dim) - 1
        self.vertices = tuple(s[0] for s in self.simplices_by_dim[0])
        self._index = {
            s: (k, i)
            for k, level in enumerate(self.simplices_by_dim)
            for i, s in enumerate(level)
        }

    def simplices(self, k):
        if k < 0 or k > self.dim:
            return ()
        return self.simplices_by_dim[k]

    def s(self, k):
        """Number of k-simplices (0 outside the dimension range)."""
        return len(self.simplices(k))

    def __contains__(self, simplex):
        return tuple(simplex) in self._index

    def index_of(self, simplex):
        simplex = tuple(simplex)
        if simplex not in self._index:
            raise SimplexNotFound(f"{simplex} not in complex")
        return self._index[simplex][1]

    def all_simplices(self):
        for level in self.simplices_by_dim:
            yield from level

    def __eq__(self, other):
        return (isinstance(other, SimplicialComplex)
                and self.simplices_by_dim == other.simplices_by_dim)

    def __hash__(self):
        return hash(self.simplices_by_dim)

    def __repr__(self):
        return f"SimplicialComplex(f_vector={face_vector(self)})"


def build_complex(maximal_simplices):
    """Close the given simplices under faces and index deterministically.

    Vertex identifiers must be orderable and hashable; tuples are sorted, the
    closure is deduplicated, and each dimension is ordered lexicographically.
    """
    maximal = [tuple(sorted(s)) for s in maximal_simplices if len(s) > 0]
    if not maximal:
        raise EmptyInput("no maximal simplices given")
    for s in maximal:
        if len(set(s)) != len(s):
            raise ValueError(f"repeated vertex in simplex {s}")
    closure = set()
    for s in maximal:
        for k in range(1, len(s) + 1):
            closure.update(combinations(s, k))
    dim = max(len(s) for s in closure) - 1
    by_dim = [sorted(s for s in closure if len(s) == k + 1) for k in range(dim + 1)]
    return SimplicialComplex(by_dim)


def maximal_simplices(K):
    """Simplices of K that are not a proper face of any other."""
    all_s = set(K.all_simplices())
    out = []
    for s in all_s:
        if not any(set(s) < set(t) for t in all_s if len(t) == len(s) + 1):
            out.append(s)
    return sorted(out, key=lambda s: (len(s), s))


def boundary_matrix(K, k):
    """Signed incidence matrix of the boundary map from k-chains to
    (k-1)-chains; entry (i, j) is the coefficient of the i-th (k-1)-simplex
    in the boundary of the j-th k-simplex."""
    if k < 1 or k > K.dim:
        raise DimOutOfRange(f"boundary_matrix needs 1 <= k <= {K.dim}, got {k}")
    faces = K.simplices(k - 1)
    face_idx = {s: i for i, s in enumerate(faces)}
    rows = [[ZERO] * K.s(k) for _ in faces]
    for j, s in enumerate(K.simplices(k)):
        for pos in range(len(s)):
            face = s[:pos] + s[pos + 1:]
            rows[face_idx[face]][j] = ONE if pos % 2 == 0 else -ONE
    return Matrix(rows, ncols=K.s(k))


def face_vector(K):
    return tuple(K.s(k) for k in range(K.dim + 1))


def euler_characteristic(K):
    return sum((-1) ** k * K.s(k) for k in range(K.dim + 1))


def star(K, simplex):
    """Closed star: the closure of all simplices containing the given one."""
    simplex = tuple(sorted(simplex))
    if simplex not in K:
        raise SimplexNotFound(f"{simplex} not in complex")
    containing = [s for s in K.all_simplices() if set(simplex) <= set(s)]
    return build_complex(containing)


def link(K, simplex):
    """Link: simplices disjoint from the given one whose join with it lies in K."""
    simplex = tuple(sorted(simplex))
    if simplex not in K:
        raise SimplexNotFound(f"{simplex} not in complex")
    sset = set(simplex)
    out = [s for s in K.all_simplices()
           if not (sset & set(s)) and tuple(sorted(sset | set(s))) in K]
    if not out:
        return None
    return build_complex(out)


def betti_numbers(K):
    """Rational Betti numbers from exact boundary ranks."""
    ranks = {k: boundary_matrix(K, k).rank() for k in range(1, K.dim + 1)}
    ranks[0] = 0
    ranks[K.dim + 1] = 0
    return tuple(K.s(k) - ranks[k] - ranks[k + 1] for k in range(K.dim + 1))


def coherent_top_orientation(K):
    """Signs making the top simplices coherently oriented.

    Propagates over shared codimension-one faces so that adjacent top
    simplices induce opposite orientations on the shared face. Requires each
    such shared face to bound at most two top simplices. Returns a dict
    mapping top simplex -> +-1 (per connected component, seeded with +1 on
    the lexicographically smallest simplex).
    """
    d = K.dim
    tops = K.simplices(d)
    if d == 0:
        return {t: 1 for t in tops}
    bd = boundary_matrix(K, d)
    incident = {}
    for j, t in enumerate(tops):
        for i in range(bd.nrows):
            if bd[i, j] != 0:
                incident.setdefault(i, []).append(j)
    adj = {j: [] for j in range(len(tops))}
    for i, js in incident.items():
        if len(js) > 2:
            raise OrientationConflict(
                f"face {K.simplices(d - 1)[i]} bounds {len(js)} top simplices")
        if len(js) == 2:
            a, b = js
            adj[a].append((b, i))
            adj[b].append((a, i))
    signs = {}
    for seed in range(len(tops)):
        if seed in signs:
            continue
        signs[seed] = 1
        queue = [seed]
        while queue:
            a = queue.pop()
            for b, i in adj[a]:
                want = -signs[a] * bd[i, a] * bd[i, b]
                if b in signs:
                    if signs[b] != want:
                        raise OrientationConflict(
                            "top dimension is not coherently orientable")
                else:
                    signs[b] = int(want)
                    queue.append(b)
    return {tops[j]: signs[j] for j in range(len(tops))}
