"""Subdivisions encoded by vertex carriers, and the derived party structure.

A subdivision of a complex N by a complex M is specified by the carrier of
each fine vertex: the smallest coarse simplex containing it. Everything else
is derived. The carrier of a fine simplex is the unique minimal coarse
simplex containing the join of its vertex carriers; a fine k-simplex is a
member of the party of a coarse k-simplex when the two dimensions agree.

Member signs (the induced orientation) are not part of the input: they are
computed by sign propagation across shared interior faces and pinned by the
requirement that the boundary of each party chain equal the included
boundary of its carrier, working up from dimension zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .complexes import (SimplicialComplex, betti_numbers, boundary_matrix,
                        build_complex, star)
from .errors import (ComplexMismatch, DisconnectedParty, InvalidSubdivision,
                     OrientationConflict, SimplexNotFound)
from .ratlin import Matrix

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class Party:
    """All fine k-simplices covering one coarse k-simplex, with signs."""

    dim: int
    carrier: tuple
    members: tuple  # of (fine simplex, sign) pairs

    def chain(self, fine):
        """Coefficient vector of the signed member sum in the fine basis."""
        v = [ZERO] * fine.s(self.dim)
        for simplex, sign in self.members:
            v[fine.index_of(simplex)] = Fraction(sign)
        return tuple(v)


@dataclass(frozen=True)
class IncidenceStats:
    simplex: tuple
    F: int        # incident (k+1)-simplices
    N_singly: int  # k-faces of those on singly represented parties
    on_party: bool


@dataclass
class ValidationReport:
    checks: list = field(default_factory=list)

    def add(self, name, ok, detail=""):
        self.checks.append((name, bool(ok), detail))

    @property
    def ok(self):
        return all(ok for _, ok, _ in self.checks)

    def failures(self):
        return [(n, d) for n, ok, d in self.checks if not ok]


class SubdivisionMap:
    """A subdivision i: coarse -> fine given by a fine-vertex carrier map.

    Instances are immutable; carriers and parties are derived lazily and
    cached, so constructing a map from corrupt data does not raise until a
    derived quantity is requested (validate_subdivision reports rather than
    raises).
    """

    def __init__(self, coarse, fine, vertex_carrier):
        self.coarse = coarse
        self.fine = fine
        self.vertex_carrier = {v: tuple(sorted(c)) for v, c in vertex_carrier.items()}
        self._carriers = None
        self._parties = None

    # -- derived data ------------------------------------------------------

    def carriers(self):
        if self._carriers is None:
            self._carriers = derive_carriers(self)
        return self._carriers

    def carrier(self, simplex):
        return self.carriers()[tuple(simplex)]

    def parties(self, k):
        if self._parties is None:
            self._parties = _derive_parties(self)
        return self._parties[k]

    def party_of(self, coarse_simplex):
        coarse_simplex = tuple(sorted(coarse_simplex))
        k = len(coarse_simplex) - 1
        for p in self.parties(k):
            if p.carrier == coarse_simplex:
                return p
        raise SimplexNotFound(f"no party with carrier {coarse_simplex}")

    def new_vertices(self):
        """Fine vertices whose carrier is not a coarse vertex."""
        return tuple(v for v in self.fine.vertices
                     if len(self.vertex_carrier[v]) > 1)

    def __repr__(self):
        return (f"SubdivisionMap({face_vec(self.coarse)} -> {face_vec(self.fine)})")


def face_vec(K):
    return tuple(K.s(k) for k in range(K.dim + 1))


def trivial_subdivision(K):
    return SubdivisionMap(K, K, {v: (v,) for v in K.vertices})


def derive_carriers(sub):
    """Carrier of every fine simplex: the unique minimal coarse simplex
    containing the union of its vertex carriers."""
    carriers = {}
    coarse, fine = sub.coarse, sub.fine
    for v in fine.vertices:
        if v not in sub.vertex_carrier:
            raise InvalidSubdivision(f"fine vertex {v} has no carrier")
        c = sub.vertex_carrier[v]
        if c not in coarse:
            raise InvalidSubdivision(f"carrier {c} of vertex {v} not in coarse complex")
    by_join = {}
    for simplex in fine.all_simplices():
        join = set()
        for v in simplex:
            join.update(sub.vertex_carrier[v])
        join = tuple(sorted(join))
        if join in by_join:
            carriers[simplex] = by_join[join]
            continue
        candidates = [c for c in coarse.all_simplices() if set(join) <= set(c)]
        if not candidates:
            raise InvalidSubdivision(
                f"no coarse simplex contains the carrier join {join} of {simplex}")
        smallest = min(candidates, key=lambda c: (len(c), c))
        if any(not set(smallest) <= set(c) for c in candidates):
            raise InvalidSubdivision(
                f"carrier join {join} of {simplex} has no unique minimal cover")
        by_join[join] = smallest
        carriers[simplex] = smallest
    return carriers


def _derive_parties(sub):
    """Parties in every dimension with induced-orientation signs.

    Signs are propagated across faces interior to each party (adjacent
    members must cancel there) and the global sign per party is fixed by
    requiring the chain boundary to equal the included carrier boundary,
    recursively from dimension zero.
    """
    carriers = sub.carriers()
    coarse, fine = sub.coarse, sub.fine
    members_of = {}
    for simplex, car in carriers.items():
        if len(simplex) == len(car):
            members_of.setdefault(car, []).append(simplex)

    parties = []
    prev_chain = {}  # coarse simplex -> party chain coefficient vector
    for k in range(coarse.dim + 1):
        level = []
        bd_fine = boundary_matrix(fine, k) if k >= 1 else None
        bd_coarse = boundary_matrix(coarse, k) if k >= 1 else None
        for ci, sigma in enumerate(coarse.simplices(k)):
            members = sorted(members_of.get(sigma, []))
            if not members:
                raise InvalidSubdivision(f"coarse simplex {sigma} has an empty party")
            if k == 0:
                if len(members) != 1:
                    raise InvalidSubdivision(
                        f"0-party of {sigma} is not a singleton: {members}")
                party = Party(0, sigma, ((members[0], 1),))
                level.append(party)
                prev_level_placeholder = None
                continue
            signs = _propagate_signs(sub, sigma, members, carriers, bd_fine)
            chain = [ZERO] * fine.s(k)
            for m, s in zip(members, signs):
                chain[fine.index_of(m)] = Fraction(s)
            target = [ZERO] * fine.s(k - 1)
            for ri, tau in enumerate(coarse.simplices(k - 1)):
                coef = bd_coarse[ri, ci]
                if coef != 0:
                    for pos, val in enumerate(prev_chain[tau]):
                        target[pos] += coef * val
            actual = [sum(bd_fine[i, j] * chain[j] for j in range(fine.s(k)))
                      for i in range(fine.s(k - 1))]
            if actual == target:
                pass
            elif [-a for a in actual] == target:
                signs = [-s for s in signs]
                chain = [-c for c in chain]
            else:
                raise OrientationConflict(
                    f"party of {sigma}: member boundary does not match included "
                    f"carrier boundary")
            level.append(Party(k, sigma, tuple(zip(members, signs))))
        parties.append(tuple(level))
        prev_chain = {p.carrier: p.chain(fine) for p in level}
    return parties


def _propagate_signs(sub, sigma, members, carriers, bd_fine):
    """Relative member signs within one party by breadth-first propagation.

    Faces interior to the party (carrier equal to sigma) must be shared by
    exactly two members, which are forced to cancel there.
    """
    fine = sub.fine
    k = len(sigma) - 1
    interior_faces = {}
    for m in members:
        for face in combinations(m, k):
            if carriers[face] == sigma:
                interior_faces.setdefault(face, []).append(m)
    adj = {m: [] for m in members}
    for face, ms in interior_faces.items():
        if len(ms) != 2:
            raise OrientationConflict(
                f"interior face {face} of party {sigma} lies in {len(ms)} members")
        a, b = ms
        adj[a].append((b, face))
        adj[b].append((a, face))

    def incidence(face, m):
        return bd_fine[fine.index_of(face), fine.index_of(m)]

    signs = {members[0]: 1}
    queue = [members[0]]
    while queue:
        a = queue.pop(0)
        for b, face in adj[a]:
            want = -signs[a] * incidence(face, a) * incidence(face, b)
            if b in signs:
                if signs[b] != want:
                    raise OrientationConflict(
                        f"inconsistent member orientations in party {sigma}")
            else:
                signs[b] = int(want)
                queue.append(b)
    if len(signs) != len(members):
        raise DisconnectedParty(
            f"party of {sigma} has a disconnected member adjacency graph")
    return [signs[m] for m in members]


def parties(sub, k):
    return sub.parties(k)


def inclusion_matrix(sub, k):
    """Chain-level inclusion: columns are the signed party chains, one per
    coarse k-simplex, in the fine simplex basis."""
    cols = [p.chain(sub.fine) for p in sub.parties(k)]
    return Matrix.from_cols(cols, nrows=sub.fine.s(k))


def validate_subdivision(sub):
    """Run all structural checks, reporting failures instead of raising."""
    report = ValidationReport()
    try:
        sub.carriers()
        report.add("carriers", True)
    except InvalidSubdivision as e:
        report.add("carriers", False, str(e))
        return report
    if sub.coarse.dim != sub.fine.dim:
        report.add("dimension", False,
                   f"coarse dim {sub.coarse.dim} != fine dim {sub.fine.dim}")
        return report
    report.add("dimension", True)
    try:
        for k in range(sub.coarse.dim + 1):
            for p in sub.parties(k):
                if not p.members:
                    report.add(f"party_nonempty[{k}]", False, str(p.carrier))
        report.add("parties", True)
    except InvalidSubdivision as e:
        report.add("parties", False, str(e))
        return report
    # member multisets partition the fine simplices carried in equal dimension
    carriers = sub.carriers()
    for k in range(sub.coarse.dim + 1):
        carried = {s for s, c in carriers.items()
                   if len(s) == k + 1 and len(c) == k + 1}
        covered = [m for p in sub.parties(k) for m, _ in p.members]
        ok = len(covered) == len(set(covered)) and set(covered) == carried
        report.add(f"partition[{k}]", ok)
    # chain map: boundary commutes with inclusion
    for k in range(1, sub.coarse.dim + 1):
        lhs = boundary_matrix(sub.fine, k) @ inclusion_matrix(sub, k)
        rhs = inclusion_matrix(sub, k - 1) @ boundary_matrix(sub.coarse, k)
        report.add(f"chain_map[{k}]", lhs == rhs)
    # homology isomorphism at the level of rational Betti numbers
    bn, bm = betti_numbers(sub.coarse), betti_numbers(sub.fine)
    report.add("betti", bn == bm, f"coarse {bn} vs fine {bm}")
    return report


def incidence_stats(sub, simplex):
    """Incidence counts used by the combinatorial lower bound.

    F counts the (k+1)-simplices incident to the given k-simplex; N_singly
    counts the k-faces of those incident simplices lying on parties that
    support exactly one such face.
    """
    simplex = tuple(sorted(simplex))
    fine = sub.fine
    k = len(simplex) - 1
    carriers = sub.carriers()
    on_party = len(carriers[simplex]) == len(simplex)
    incident = [s for s in fine.simplices(k + 1) if set(simplex) <= set(s)]
    faces = set()
    for s in incident:
        faces.update(combinations(s, k + 1))
    by_party = {}
    for f in faces:
        car = carriers[f]
        if len(car) == k + 1:  # f lies on the party of car
            by_party.setdefault(car, []).append(f)
    n_singly = sum(1 for fs in by_party.values() if len(fs) == 1)
    return IncidenceStats(simplex=simplex, F=len(incident),
                          N_singly=n_singly, on_party=on_party)


def stellar_subdivide(K, simplex, new_vertex=None):
    """Elementary stellar subdivision along a simplex of positive dimension.

    Replaces the star of the simplex with the cone from a fresh vertex over
    (boundary of simplex) * link(simplex) and returns the subdivision map.
    """
    simplex = tuple(sorted(simplex))
    if simplex not in K:
        raise SimplexNotFound(f"{simplex} not in complex")
    if len(simplex) < 2:
        raise InvalidSubdivision(
            "stellar subdivision along a vertex is the identity relabeling")
    if new_vertex is None:
        new_vertex = max(K.vertices) + 1
    if new_vertex in K.vertices:
        raise ValueError(f"new vertex {new_vertex} already present")
    sset = set(simplex)
    kept = [s for s in K.all_simplices() if not sset <= set(s)]
    lk = [s for s in K.all_simplices()
          if not (sset & set(s)) and tuple(sorted(sset | set(s))) in K]
    cone = []
    proper_faces = [f for r in range(len(simplex)) for f in combinations(simplex, r)]
    for a in proper_faces:
        cone.append(tuple(sorted((new_vertex,) + a)))
        for b in lk:
            cone.append(tuple(sorted((new_vertex,) + a + b)))
    M = build_complex(kept + cone)
    carrier = {v: (v,) for v in K.vertices}
    carrier[new_vertex] = simplex
    return SubdivisionMap(K, M, carrier)


def compose(sub_xy, sub_yz):
    """Composite subdivision X -> Z of X -> Y and Y -> Z.

    Carrier composition only; the party structure of the composite is
    recomputed from scratch (pushing decompositions forward does not
    respect the composite's orthogonality).
    """
    if sub_xy.fine != sub_yz.coarse:
        raise ComplexMismatch("fine complex of the first map must equal the "
                              "coarse complex of the second")
    mid_carriers = sub_xy.carriers()
    carrier = {}
    for v in sub_yz.fine.vertices:
        tau = sub_yz.vertex_carrier[v]
        carrier[v] = mid_carriers[tau]
    return SubdivisionMap(sub_xy.coarse, sub_yz.fine, carrier)


def relabel_fine(sub, mapping):
    """Apply a vertex bijection to the fine complex; carriers follow."""
    old = sub.fine
    if sorted(mapping.keys()) != sorted(old.vertices):
        raise ValueError("mapping must cover exactly the fine vertices")
    if len(set(mapping.values())) != len(mapping):
        raise ValueError("mapping must be a bijection")
    new_simplices = [tuple(sorted(mapping[v] for v in s))
                     for s in old.all_simplices()]
    fine = build_complex(new_simplices)
    carrier = {mapping[v]: c for v, c in sub.vertex_carrier.items()}
    return SubdivisionMap(sub.coarse, fine, carrier)
