"""Glued simplicial pseudo-complexes and their subdivisions.

A GluedComplex is a disjoint union of d-simplices (top cells, vertices
labelled 0..d) together with involutive facet gluings; faces of every
dimension arise as orbits of (cell, vertex-subset) pairs under the gluing
groupoid.  This is the combinatorial structure underlying ideal
triangulations in any dimension; no manifold property is assumed, and
everything here also applies to the lower-dimensional complexes obtained
as vertex links.

Subdivision comes in two forms sharing the same combinatorics:

* flag_subdivision produces an ordered delta complex whose k-cells are
  orbits of (top cell, flag A_0 < ... < A_k of vertex subsets).  The
  identifications preserve the grading by barycenter dimension, so the
  alternating-sum boundary is well defined and homology can be computed.

* barycentric_cover produces the same subdivision again as a
  GluedComplex: top cells are (cell, vertex ordering) pairs and every
  gluing map is the identity on barycenter positions.  This closes the
  loop, letting the subdivision be subdivided again.

Fixed-point sets of cellular automorphisms are computed on the flag
subdivision: an order-preserving simplicial self-map of a simplex fixing
it setwise is the identity on it, so after one subdivision the invariant
cells form a genuine subcomplex equal to the topological fixed set.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import grphom
from .presentations import Presentation

__all__ = [
    "GluedComplex",
    "CellularMap",
    "DeltaComplex",
    "FixedSubcomplex",
    "SpineData",
    "dual_spine_presentation",
    "h1_action",
]


Gluings = dict  # (cell, frozenset) -> (cell2, {vertex: vertex})


def _perm_sign(perm: Sequence[int]) -> int:
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm))
              if perm[i] > perm[j])
    return -1 if inv % 2 else 1


class GluedComplex:
    """dim-dimensional complex built from n top simplices and facet
    gluings.  gluings[(t, F)] = (t2, m) where F is a frozenset of dim
    vertices of t and m maps F bijectively onto a facet of t2.  Unglued
    facets are boundary.  Validation enforces involutivity.
    """

    def __init__(self, dim: int, n: int, gluings: Gluings):
        self.dim = dim
        self.n = n
        self.gluings = dict(gluings)
        self._face_orbits = None
        self._validate()

    def _validate(self) -> None:
        full = frozenset(range(self.dim + 1))
        for (t, F), (t2, m) in self.gluings.items():
            if not 0 <= t < self.n or not 0 <= t2 < self.n:
                raise ValueError(f"cell index out of range in gluing ({t},{t2})")
            if not (isinstance(F, frozenset) and len(F) == self.dim
                    and F < full):
                raise ValueError(f"bad facet key {F} on cell {t}")
            if set(m.keys()) != set(F):
                raise ValueError(f"gluing map domain mismatch on ({t},{F})")
            img = frozenset(m.values())
            if len(img) != self.dim or not img < full:
                raise ValueError(f"gluing map image is not a facet on ({t},{F})")
            back = self.gluings.get((t2, img))
            if back is None:
                raise ValueError(f"gluing ({t},{F}) has no inverse entry")
            t3, m2 = back
            if t3 != t or any(m2[m[v]] != v for v in F):
                raise ValueError(f"gluing ({t},{F}) is not involutive")
            if t2 == t and img == F:
                raise ValueError(f"facet {F} of cell {t} glued to itself")

    # -- faces --------------------------------------------------------------

    def is_closed(self) -> bool:
        return len(self.gluings) == self.n * (self.dim + 1)

    def boundary_facets(self) -> list[tuple[int, frozenset]]:
        out = []
        for t in range(self.n):
            for F in itertools.combinations(range(self.dim + 1), self.dim):
                key = (t, frozenset(F))
                if key not in self.gluings:
                    out.append(key)
        return out

    def face_orbits(self):
        """Orbits of (cell, vertex subset) pairs under the groupoid.

        Returns (orbits, lookup): orbits[k] lists the orbits of k-faces,
        each a sorted tuple of (cell, frozenset) pairs; lookup maps a pair
        to its (k, index).
        """
        if self._face_orbits is not None:
            return self._face_orbits
        parent: dict = {}

        def find(x):
            root = x
            while parent[root] != root:
                root = parent[root]
            while parent[x] != root:
                parent[x], x = root, parent[x]
            return root

        pairs = []
        for t in range(self.n):
            for k in range(1, self.dim + 2):
                for A in itertools.combinations(range(self.dim + 1), k):
                    key = (t, frozenset(A))
                    parent[key] = key
                    pairs.append(key)
        for (t, F), (t2, m) in self.gluings.items():
            for k in range(1, self.dim + 1):
                for A in itertools.combinations(sorted(F), k):
                    a = find((t, frozenset(A)))
                    b = find((t2, frozenset(m[v] for v in A)))
                    if a != b:
                        parent[a] = b
        groups: dict = defaultdict(list)
        for key in pairs:
            groups[find(key)].append(key)
        orbits = [[] for _ in range(self.dim + 1)]
        lookup = {}
        for root in sorted(groups, key=lambda r: (len(r[1]), r[0],
                                                  tuple(sorted(r[1])))):
            members = sorted(groups[root],
                             key=lambda x: (x[0], tuple(sorted(x[1]))))
            k = len(members[0][1]) - 1
            idx = len(orbits[k])
            orbits[k].append(tuple(members))
            for mkey in members:
                lookup[mkey] = (k, idx)
        self._face_orbits = (orbits, lookup)
        return self._face_orbits

    def f_vector(self) -> list[int]:
        orbits, _ = self.face_orbits()
        return [len(orbits[k]) for k in range(self.dim + 1)]

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.f_vector()))

    # -- orientability ------------------------------------------------------

    def _extended_gluing_perm(self, t: int, F: frozenset):
        """Extend the facet gluing to a full vertex bijection using the
        off-facet vertices; returns (t2, perm tuple)."""
        t2, m = self.gluings[(t, F)]
        off_t = next(v for v in range(self.dim + 1) if v not in F)
        img = set(m.values())
        off_t2 = next(v for v in range(self.dim + 1) if v not in img)
        fullmap = dict(m)
        fullmap[off_t] = off_t2
        return t2, tuple(fullmap[v] for v in range(self.dim + 1))

    def orientation_signs(self) -> Optional[dict[int, int]]:
        """A coherent orientation as a sign per top cell, or None.

        A gluing is orientation-compatible between equally-signed cells
        exactly when its extended vertex permutation is odd; propagation
        is by depth-first search over the dual graph, and any
        contradiction means non-orientable.  Disconnected complexes get
        each component oriented from its least cell.
        """
        signs: dict[int, int] = {}
        for start in range(self.n):
            if start in signs:
                continue
            signs[start] = 1
            stack = [start]
            while stack:
                t = stack.pop()
                for F in itertools.combinations(range(self.dim + 1),
                                                self.dim):
                    key = (t, frozenset(F))
                    if key not in self.gluings:
                        continue
                    t2, perm = self._extended_gluing_perm(t, frozenset(F))
                    want = -_perm_sign(perm) * signs[t]
                    if t2 in signs:
                        if signs[t2] != want:
                            return None
                    else:
                        signs[t2] = want
                        stack.append(t2)
        return signs

    def is_orientable(self) -> bool:
        return self.orientation_signs() is not None

    # -- links --------------------------------------------------------------

    def vertex_orbits(self) -> list[tuple]:
        orbits, _ = self.face_orbits()
        return [tuple((t, next(iter(A))) for t, A in orb)
                for orb in orbits[0]]

    def link_of_vertex(self, orbit_index: int = 0):
        """Link of a vertex orbit as a (dim-1)-GluedComplex.

        One top cell per incidence (t, v) with v in the orbit; the link
        cell inherits labels 0..dim-1 from the increasing order of the
        remaining vertices.  Returns (link, incidences) with incidences[i]
        the (t, v) pair of link cell i.
        """
        incidences = sorted(self.vertex_orbits()[orbit_index])
        idx = {tv: i for i, tv in enumerate(incidences)}
        d = self.dim
        gl: Gluings = {}
        for (t, v) in incidences:
            rest = sorted(x for x in range(d + 1) if x != v)
            rel = {x: i for i, x in enumerate(rest)}
            for F in itertools.combinations(range(d + 1), d):
                Fs = frozenset(F)
                if v not in Fs or (t, Fs) not in self.gluings:
                    continue
                t2, m = self.gluings[(t, Fs)]
                v2 = m[v]
                rest2 = sorted(x for x in range(d + 1) if x != v2)
                rel2 = {x: i for i, x in enumerate(rest2)}
                face = [x for x in F if x != v]
                mm = {rel[x]: rel2[m[x]] for x in face}
                gl[(idx[(t, v)], frozenset(rel[x] for x in face))] = \
                    (idx[(t2, v2)], mm)
        return GluedComplex(d - 1, len(incidences), gl), incidences

    # -- automorphisms ------------------------------------------------------

    def automorphisms(self) -> list["CellularMap"]:
        """All combinatorial automorphisms, by propagating the image of
        cell 0 across gluings and backtracking over the seed."""
        out = []
        if self.n == 0:
            return out
        for q0 in range(self.n):
            for perm0 in itertools.permutations(range(self.dim + 1)):
                imgs = {0: (q0, tuple(perm0))}
                stack = [0]
                ok = True
                while stack and ok:
                    t = stack.pop()
                    q, rho = imgs[t]
                    for F in itertools.combinations(range(self.dim + 1),
                                                    self.dim):
                        Fs = frozenset(F)
                        glued = (t, Fs) in self.gluings
                        imgF = frozenset(rho[v] for v in F)
                        glued2 = (q, imgF) in self.gluings
                        if glued != glued2:
                            ok = False
                            break
                        if not glued:
                            continue
                        t2, m = self.gluings[(t, Fs)]
                        q2, m2 = self.gluings[(q, imgF)]
                        rho_new = [None] * (self.dim + 1)
                        for v in F:
                            rho_new[m[v]] = m2[rho[v]]
                        off = next(v for v in range(self.dim + 1)
                                   if rho_new[v] is None)
                        used = {x for x in rho_new if x is not None}
                        rho_new[off] = next(v for v in range(self.dim + 1)
                                            if v not in used)
                        cand = (q2, tuple(rho_new))
                        if t2 in imgs:
                            if imgs[t2] != cand:
                                ok = False
                                break
                        else:
                            imgs[t2] = cand
                            stack.append(t2)
                if not ok or len(imgs) != self.n:
                    continue
                if len({imgs[t][0] for t in imgs}) != self.n:
                    continue
                cm = CellularMap(self, {t: imgs[t] for t in range(self.n)})
                if cm.is_valid():
                    out.append(cm)
        return out

    # -- flag subdivision ---------------------------------------------------

    def _all_flags(self):
        """flags[k] = flags A_0 < ... < A_k of nonempty vertex subsets."""
        verts = tuple(range(self.dim + 1))
        subsets = []
        for k in range(1, self.dim + 2):
            subsets += [frozenset(c)
                        for c in itertools.combinations(verts, k)]
        flags = defaultdict(list)

        def extend(chain):
            flags[len(chain) - 1].append(tuple(chain))
            for S in subsets:
                if len(S) > len(chain[-1]) and chain[-1] < S:
                    extend(chain + [S])

        for S in subsets:
            extend([S])
        return flags

    def flag_subdivision(self, action: Optional["CellularMap"] = None):
        """Barycentric subdivision as an ordered delta complex.

        k-cells are orbits of (top cell, flag) pairs.  Returns
        (DeltaComplex, cellid, cell_action) where cellid maps each
        (t, flag) to its cell index and cell_action[k] is the induced
        permutation of k-cells for the given automorphism (None
        otherwise).
        """
        flags = self._all_flags()
        parent: dict = {}

        def find(x):
            root = x
            while parent[root] != root:
                root = parent[root]
            while parent[x] != root:
                parent[x], x = root, parent[x]
            return root

        items = []
        for t in range(self.n):
            for k in range(self.dim + 1):
                for fl in flags[k]:
                    key = (t, fl)
                    parent[key] = key
                    items.append(key)
        for (t, F), (t2, m) in self.gluings.items():
            for k in range(self.dim + 1):
                for fl in flags[k]:
                    if fl[-1] <= F:
                        fl2 = tuple(frozenset(m[x] for x in A) for A in fl)
                        a, b = find((t, fl)), find((t2, fl2))
                        if a != b:
                            parent[a] = b
        reps: dict = defaultdict(dict)
        cellid = {}
        for (t, fl) in items:
            k = len(fl) - 1
            r = find((t, fl))
            if r not in reps[k]:
                reps[k][r] = len(reps[k])
            cellid[(t, fl)] = reps[k][r]
        ncells = [len(reps[k]) for k in range(self.dim + 1)]
        faces: list = [None] * (self.dim + 1)
        for k in range(1, self.dim + 1):
            fk: dict = {}
            for (t, fl) in items:
                if len(fl) - 1 != k:
                    continue
                cid = cellid[(t, fl)]
                if cid not in fk:
                    fk[cid] = tuple(cellid[(t, fl[:i] + fl[i + 1:])]
                                    for i in range(k + 1))
            faces[k] = [fk[i] for i in range(ncells[k])]
        D = DeltaComplex(ncells, faces)
        cell_action = None
        if action is not None:
            cell_action = [[None] * ncells[k]
                           for k in range(self.dim + 1)]
            for (t, fl) in items:
                k = len(fl) - 1
                t2, rho = action.images[t]
                fl2 = tuple(frozenset(rho[x] for x in A) for A in fl)
                cell_action[k][cellid[(t, fl)]] = cellid[(t2, fl2)]
            for k in range(self.dim + 1):
                if sorted(cell_action[k]) != list(range(ncells[k])):
                    raise ValueError("action does not permute cells")
            for k in range(1, self.dim + 1):
                for c in range(ncells[k]):
                    img_faces = tuple(cell_action[k - 1][f]
                                      for f in faces[k][c])
                    if img_faces != faces[k][cell_action[k][c]]:
                        raise ValueError("action is not simplicial on the"
                                         " subdivision")
        return D, cellid, cell_action

    # -- barycentric cover (subdivision as a GluedComplex) -------------------

    def barycentric_cover(self) -> "GluedComplex":
        """The flag subdivision, re-expressed with one top simplex per
        (cell, vertex ordering) pair so it can be subdivided again.

        Position j of cell (t, sigma) is the barycenter of
        sigma({0..j}).  All gluing maps are identities on positions:
        positions i < dim glue to the ordering with sigma(i), sigma(i+1)
        swapped inside the same t; position dim crosses the original
        facet gluing opposite sigma(dim).
        """
        d = self.dim
        perms = list(itertools.permutations(range(d + 1)))
        pidx = {p: i for i, p in enumerate(perms)}
        nfac = len(perms)

        def cid(t, sigma):
            return t * nfac + pidx[sigma]

        gl: Gluings = {}
        positions = frozenset(range(d + 1))
        for t in range(self.n):
            for sigma in perms:
                me = cid(t, sigma)
                for i in range(d):
                    tau = list(sigma)
                    tau[i], tau[i + 1] = tau[i + 1], tau[i]
                    other = cid(t, tuple(tau))
                    fac = positions - {i}
                    gl[(me, fac)] = (other, {j: j for j in fac})
                F = frozenset(sigma[j] for j in range(d))
                key = (t, F)
                if key in self.gluings:
                    t2, m = self.gluings[key]
                    img = frozenset(m.values())
                    off2 = next(v for v in range(d + 1) if v not in img)
                    sig2 = tuple(m[sigma[j]] for j in range(d)) + (off2,)
                    fac = positions - {d}
                    gl[(me, fac)] = (cid(t2, sig2), {j: j for j in fac})
        return GluedComplex(d, self.n * nfac, gl)

    def transport_to_cover(self, auto: "CellularMap") -> "CellularMap":
        """The induced automorphism of barycentric_cover()."""
        d = self.dim
        perms = list(itertools.permutations(range(d + 1)))
        pidx = {p: i for i, p in enumerate(perms)}
        nfac = len(perms)
        ident = tuple(range(d + 1))
        images = {}
        for t in range(self.n):
            t2, rho = auto.images[t]
            for sigma in perms:
                sig2 = tuple(rho[sigma[j]] for j in range(d + 1))
                images[t * nfac + pidx[sigma]] = (t2 * nfac + pidx[sig2],
                                                  ident)
        cover = self.barycentric_cover()
        return CellularMap(cover, images)

    # -- fixed points -------------------------------------------------------

    def fixed_subcomplex(self, auto: "CellularMap") -> "FixedSubcomplex":
        """Fixed-point set of the automorphism, as the subcomplex of
        invariant cells of the flag subdivision."""
        D, cellid, act = self.flag_subdivision(action=auto)
        fixed = [[c for c in range(D.ncells[k]) if act[k][c] == c]
                 for k in range(self.dim + 1)]
        # faces of invariant cells are invariant, so this is a subcomplex
        fixed_sets = [set(f) for f in fixed]
        for k in range(1, self.dim + 1):
            for c in fixed[k]:
                for f in D.faces[k][c]:
                    if f not in fixed_sets[k - 1]:
                        raise AssertionError("invariant cells do not form"
                                             " a subcomplex")
        par: dict = {}

        def find(x):
            while par[x] != x:
                par[x] = par[par[x]]
                x = par[x]
            return x

        for k in range(self.dim + 1):
            for c in fixed[k]:
                par[(k, c)] = (k, c)
        for k in range(1, self.dim + 1):
            for c in fixed[k]:
                for f in D.faces[k][c]:
                    a, b = find((k, c)), find((k - 1, f))
                    if a != b:
                        par[a] = b
        comps: dict = defaultdict(list)
        for k in range(self.dim + 1):
            for c in fixed[k]:
                comps[find((k, c))].append((k, c))
        components = []
        for root in sorted(comps):
            cells = comps[root]
            by_dim = [0] * (self.dim + 1)
            for k, _ in cells:
                by_dim[k] += 1
            components.append(FixedComponent(
                max_dim=max(k for k, _ in cells),
                euler=sum((-1) ** k for k, _ in cells),
                cells_by_dim=by_dim))
        components.sort(key=lambda c: (c.max_dim, c.euler,
                                       tuple(c.cells_by_dim)))
        return FixedSubcomplex(components=components,
                               ncells_by_dim=[len(f) for f in fixed])


@dataclass
class FixedComponent:
    max_dim: int
    euler: int
    cells_by_dim: list[int]


@dataclass
class FixedSubcomplex:
    """Connected components of a fixed-point set, with cell counts."""

    components: list[FixedComponent]
    ncells_by_dim: list[int]

    def summary(self) -> list[tuple[int, int]]:
        """Sorted (max_dim, euler) pairs, one per component; the shape
        data used for stability comparisons."""
        return sorted((c.max_dim, c.euler) for c in self.components)

    def is_isolated_points(self, count: int) -> bool:
        return (len(self.components) == count
                and all(c.max_dim == 0 and c.euler == 1
                        for c in self.components))


class CellularMap:
    """Automorphism of a GluedComplex: cell t -> (image cell, vertex
    permutation)."""

    def __init__(self, complex_: GluedComplex, images: dict):
        self.complex = complex_
        self.images = dict(images)

    def is_valid(self) -> bool:
        X = self.complex
        if sorted(self.images) != list(range(X.n)):
            return False
        if sorted(t2 for t2, _ in self.images.values()) != list(range(X.n)):
            return False
        for t in range(X.n):
            q, rho = self.images[t]
            for F in itertools.combinations(range(X.dim + 1), X.dim):
                Fs = frozenset(F)
                imgF = frozenset(rho[v] for v in F)
                if (t, Fs) not in X.gluings:
                    if (q, imgF) in X.gluings:
                        return False
                    continue
                if (q, imgF) not in X.gluings:
                    return False
                t2, m = X.gluings[(t, Fs)]
                q2, m2 = X.gluings[(q, imgF)]
                q2b, rho2 = self.images[t2]
                if q2b != q2:
                    return False
                for v in F:
                    if rho2[m[v]] != m2[rho[v]]:
                        return False
        return True

    def is_identity(self) -> bool:
        ident = tuple(range(self.complex.dim + 1))
        return all(self.images[t] == (t, ident)
                   for t in range(self.complex.n))

    def compose(self, other: "CellularMap") -> "CellularMap":
        """self after other."""
        out = {}
        for t in range(self.complex.n):
            q, rho = other.images[t]
            q2, rho2 = self.images[q]
            out[t] = (q2, tuple(rho2[rho[v]]
                                for v in range(self.complex.dim + 1)))
        return CellularMap(self.complex, out)

    def order(self) -> int:
        k = 1
        cur = self
        while not cur.is_identity():
            cur = cur.compose(self)
            k += 1
            if k > 10_000:
                raise RuntimeError("order did not terminate")
        return k

    def orientation_character(self) -> int:
        """+1 if orientation-preserving, -1 if reversing (requires an
        orientable complex); raises if the character is not constant."""
        signs = self.complex.orientation_signs()
        if signs is None:
            raise ValueError("complex is not orientable")
        vals = set()
        for t in range(self.complex.n):
            q, rho = self.images[t]
            vals.add(signs[t] * signs[q] * _perm_sign(rho))
        if len(vals) != 1:
            raise ValueError("orientation character is not constant")
        return vals.pop()

    def __eq__(self, other) -> bool:
        return (isinstance(other, CellularMap)
                and self.images == other.images)

    def __hash__(self):
        return hash(tuple(sorted(self.images.items())))


# ---------------------------------------------------------------------------
# ordered delta complexes


class DeltaComplex:
    """Ordered delta complex: faces[k][i] is the ordered tuple of
    (k-1)-cell ids of cell i (length k+1), so the boundary is the
    alternating sum of face deletions."""

    def __init__(self, ncells: list[int], faces: list):
        self.ncells = list(ncells)
        self.faces = faces
        for k in range(1, len(ncells)):
            if len(faces[k]) != ncells[k]:
                raise ValueError(f"face list length mismatch in dim {k}")
            for tup in faces[k]:
                if len(tup) != k + 1:
                    raise ValueError(f"cell in dim {k} with {len(tup)} faces")
                for f in tup:
                    if not 0 <= f < ncells[k - 1]:
                        raise ValueError("face id out of range")

    @property
    def dim(self) -> int:
        return len(self.ncells) - 1

    def boundary_matrix(self, k: int) -> grphom.IntMatrix:
        triples = []
        for j in range(self.ncells[k]):
            for i, f in enumerate(self.faces[k][j]):
                triples.append((f, j, -1 if i % 2 else 1))
        return grphom.IntMatrix.from_triples(self.ncells[k - 1],
                                             self.ncells[k], triples)

    def homology(self) -> list[grphom.HomologyGroup]:
        boundaries = {k: self.boundary_matrix(k)
                      for k in range(1, self.dim + 1)}
        return grphom.homology_of_chain_complex(boundaries, self.ncells)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * c for k, c in enumerate(self.ncells))


# ---------------------------------------------------------------------------
# dual spine fundamental group


@dataclass
class SpineData:
    """Dual-2-complex bookkeeping behind a spine presentation.

    edges: facet-orbit keys, each a frozenset of the two (cell, facet)
    sides; positive_side: chosen orientation per edge; tree: edge keys in
    the spanning tree; generator_edges: non-tree edges in presentation
    order; walks: per (dim-2)-face orbit, the signed edge sequence of the
    dual walk around it (indices into edges with signs).
    """

    edges: list
    positive_side: dict
    tree: set
    generator_edges: list
    walks: list


def _edge_key(X: GluedComplex, t: int, F: frozenset):
    t2, m = X.gluings[(t, F)]
    return frozenset([(t, F), (t2, frozenset(m[v] for v in F))])


def dual_spine_presentation(X: GluedComplex,
                            base: int = 0) -> tuple[Presentation, SpineData]:
    """Presentation of the fundamental group from the dual spine.

    Vertices are top cells, edges are facet orbits, 2-cells are
    (dim-2)-face orbits attached along the dual walk around the face.
    A breadth-first spanning tree from the base cell kills dim(H_0)
    edges; the rest are generators in deterministic order, and each walk
    contributes one relator.  Requires a connected, closed complex.
    """
    if not X.is_closed():
        raise ValueError("dual spine needs a closed complex")
    d = X.dim
    edge_set = {}
    for (t, F) in X.gluings:
        key = _edge_key(X, t, F)
        if key not in edge_set:
            edge_set[key] = None
    edges = sorted(edge_set, key=lambda k: sorted(k))
    eidx = {e: i for i, e in enumerate(edges)}
    positive_side = {e: sorted(e)[0] for e in edges}

    adj = defaultdict(list)
    for e in edges:
        sides = sorted(e)
        (p1, _), (p2, _) = sides
        adj[p1].append((eidx[e], p2))
        adj[p2].append((eidx[e], p1))
    tree = set()
    seen = {base}
    queue = [base]
    while queue:
        p = queue.pop(0)
        for ei, q in sorted(adj[p]):
            if q not in seen:
                seen.add(q)
                tree.add(edges[ei])
                queue.append(q)
    if len(seen) != X.n:
        raise ValueError("dual graph is not connected")
    gens = [e for e in edges if e not in tree]
    gidx = {e: i for i, e in enumerate(gens)}

    orbits, lookup = X.face_orbits()
    ridge_orbits = orbits[d - 2]
    relators = []
    walks = []
    for orb in ridge_orbits:
        t0, A0 = orb[0]
        F0 = next(frozenset(F) for F in
                  itertools.combinations(range(d + 1), d)
                  if A0 <= frozenset(F))
        word = []
        walk = []
        t, A, F = t0, A0, F0
        while True:
            t2, m = X.gluings[(t, F)]
            e = _edge_key(X, t, F)
            sign = 1 if positive_side[e] == (t, F) else -1
            walk.append((eidx[e], sign))
            if e in gidx:
                word.append(sign * (gidx[e] + 1))
            A2 = frozenset(m[x] for x in A)
            Fin = frozenset(m[x] for x in F)
            Fs = [frozenset(G) for G in
                  itertools.combinations(range(d + 1), d)
                  if A2 <= frozenset(G)]
            Fnext = Fs[0] if Fs[1] == Fin else Fs[1]
            t, A, F = t2, A2, Fnext
            if (t, A, F) == (t0, A0, F0):
                break
        relators.append(tuple(word))
        walks.append(walk)
    names = [f"x{i + 1}" for i in range(len(gens))]
    P = Presentation(names, relators)
    data = SpineData(edges, positive_side, tree, gens, walks)
    return P, data


def h1_action(X: GluedComplex, auto: CellularMap, data: SpineData) -> int:
    """Action of an automorphism on the free part of H_1 of the dual
    spine, which must have free rank exactly 1; returns the integer
    multiplier (+-1 for a finite-order automorphism)."""
    edges = data.edges
    eidx = {e: i for i, e in enumerate(edges)}
    nE = len(edges)
    # d1: C_1 -> C_0 with the positive-side orientation tail -> head
    d1 = [[0] * nE for _ in range(X.n)]
    for e in edges:
        (t1, F1) = data.positive_side[e]
        other = next(s for s in e if s != (t1, F1)) if len(e) == 2 else \
            (t1, F1)
        d1[other[0]][eidx[e]] += 1
        d1[t1][eidx[e]] -= 1
    # d2 columns from the stored walks
    d2 = [[0] * len(data.walks) for _ in range(nE)]
    for j, walk in enumerate(data.walks):
        for ei, sign in walk:
            d2[ei][j] += sign
    # action on edges, with signs from how positive sides map
    act_col = [None] * nE
    act_sign = [0] * nE
    for e in edges:
        (t1, F1) = data.positive_side[e]
        q, rho = auto.images[t1]
        F1p = frozenset(rho[v] for v in F1)
        e2 = _edge_key(X, q, F1p)
        act_col[eidx[e]] = eidx[e2]
        act_sign[eidx[e]] = 1 if data.positive_side[e2] == (q, F1p) else -1
    # kernel of d1 as an integer lattice basis
    K, _ = grphom._column_reduce(
        [[d1[r][c] for r in range(X.n)] for c in range(nE)], X.n,
        track=True)[1], None
    K = grphom._integer_kernel_basis(d1, nE)
    k = len(K)
    # express d2 columns and the acted basis in K-coordinates
    Kcols = [list(col) for col in K]

    def in_K_coords(vec):
        # solve sum x_i K_i = vec; K has full column rank
        cols = Kcols + [list(vec)]
        # solve by rational elimination on the nE x (k+1) system
        A = [[Fraction(Kcols[j][r]) for j in range(k)] + [Fraction(vec[r])]
             for r in range(nE)]
        piv = []
        rr = 0
        for c in range(k):
            prow = next((i for i in range(rr, nE) if A[i][c]), None)
            if prow is None:
                raise ValueError("kernel basis is degenerate")
            A[rr], A[prow] = A[prow], A[rr]
            scale = 1 / A[rr][c]
            A[rr] = [x * scale for x in A[rr]]
            for i in range(nE):
                if i != rr and A[i][c]:
                    f = A[i][c]
                    A[i] = [x - f * y for x, y in zip(A[i], A[rr])]
            piv.append(c)
            rr += 1
        for i in range(rr, nE):
            if A[i][k]:
                raise ValueError("vector is not in the kernel")
        out = []
        for i in range(k):
            v = A[i][k]
            if v.denominator != 1:
                raise ValueError("non-integral kernel coordinates")
            out.append(int(v))
        return out

    d2_in_K = [in_K_coords([d2[r][j] for r in range(nE)])
               for j in range(len(data.walks))]
    M = [[d2_in_K[j][i] for j in range(len(d2_in_K))] for i in range(k)]
    dvec, U, Uinv, _ = grphom._snf_dense([row[:] for row in M], track_u=True)
    rank = len(dvec)
    free_rows = list(range(rank, k))
    if len(free_rows) != 1:
        raise ValueError(f"H_1 free rank is {len(free_rows)}, need 1")
    fr = free_rows[0]
    # generator z with U z = e_fr; its image under the action
    z = [Uinv[i][fr] for i in range(k)]
    zvec = [sum(Kcols[j][r] * z[j] for j in range(k)) for r in range(nE)]
    azvec = [0] * nE
    for ei in range(nE):
        if zvec[ei]:
            azvec[act_col[ei]] += act_sign[ei] * zvec[ei]
    az = in_K_coords(azvec)
    w = [sum(U[i][j] * az[j] for j in range(k)) for i in range(k)]
    return w[fr]
