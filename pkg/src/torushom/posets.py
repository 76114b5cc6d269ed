"""Finite simplicial posets.

A simplicial poset has a least element and every lower interval is a
boolean lattice.  Unlike a simplicial complex, two elements may share the
same vertex set (a digon has two edges on the same pair of vertices), so
elements carry explicit ids and, where necessary, explicit face lists.

The least element is represented by the constant ``BOTTOM`` and is never
listed among the cells.
"""

import itertools
from math import comb

from .chains import ChainComplex
from .errors import ValidationError
from .fields import QQ

BOTTOM = None


class SimplicialPoset:
    """Built from a list of vertex ids and a list of cell dicts.

    Each cell dict has an ``id``, its ``vertices``, and optionally
    ``faces``: the ids of its codimension-one faces.  When several cells
    share a vertex set the face lists of anything above them are required;
    otherwise they are inferred.
    """

    def __init__(self, vertices, cells, check=True):
        self._ver = {BOTTOM: frozenset()}
        self._faces = {BOTTOM: {}}
        for v in vertices:
            if v in self._ver or v is BOTTOM:
                raise ValidationError("duplicate or reserved vertex id %r" % (v,))
            self._ver[v] = frozenset([v])
            self._faces[v] = {frozenset(): BOTTOM, frozenset([v]): v}
        try:
            sorted(vertices)
        except TypeError:
            raise ValidationError("vertex ids must be mutually sortable")
        for cell in sorted(cells, key=lambda c: len(c["vertices"])):
            self._add_cell(cell)
        self._by_rank = {}
        for e, vs in self._ver.items():
            if e is BOTTOM:
                continue
            self._by_rank.setdefault(len(vs), []).append(e)
        for k in self._by_rank:
            self._by_rank[k].sort(key=lambda e: repr(e))
        if check:
            self.validate()

    def _add_cell(self, cell):
        eid = cell["id"]
        vs = frozenset(cell["vertices"])
        if eid in self._ver or eid is BOTTOM:
            raise ValidationError("duplicate or reserved cell id %r" % (eid,))
        if len(vs) < 2:
            raise ValidationError(
                "cell %r must have at least two vertices" % (eid,))
        if len(vs) != len(cell["vertices"]):
            raise ValidationError("cell %r repeats a vertex" % (eid,))
        missing = [v for v in vs if v not in self._ver or len(self._ver[v]) != 1]
        if missing:
            raise ValidationError(
                "cell %r uses undeclared vertices %r" % (eid, missing))
        if "faces" in cell:
            face_ids = list(cell["faces"])
        else:
            face_ids = []
            for v in sorted(vs):
                sub = vs - {v}
                cands = [e for e, w in self._ver.items()
                         if w == sub and e is not BOTTOM]
                if len(cands) != 1:
                    raise ValidationError(
                        "cell %r: face with vertices %r is %s; list faces "
                        "explicitly" % (eid, sorted(sub),
                                        "absent" if not cands else "ambiguous"))
                face_ids.append(cands[0])
        # assemble the full boolean face map from the codimension-one faces
        fmap = {vs: eid}
        seen_subsets = set()
        for f in face_ids:
            if f not in self._ver:
                raise ValidationError("cell %r lists unknown face %r" % (eid, f))
            fvs = self._ver[f]
            if len(fvs) != len(vs) - 1 or not fvs <= vs:
                raise ValidationError(
                    "cell %r: %r is not a codimension-one face" % (eid, f))
            if fvs in seen_subsets:
                raise ValidationError(
                    "cell %r has two faces on vertices %r" % (eid, sorted(fvs)))
            seen_subsets.add(fvs)
            for sub, e in self._faces[f].items():
                if sub in fmap and fmap[sub] != e:
                    raise ValidationError(
                        "cell %r: faces disagree on the sub-face with "
                        "vertices %r" % (eid, sorted(sub)))
                fmap[sub] = e
        if len(seen_subsets) != len(vs):
            raise ValidationError("cell %r is missing a face" % (eid,))
        self._ver[eid] = vs
        self._faces[eid] = fmap

    # --- basic queries -------------------------------------------------

    def elements(self, include_bottom=False):
        out = [e for e in self._ver if e is not BOTTOM]
        out.sort(key=lambda e: (len(self._ver[e]), repr(e)))
        if include_bottom:
            out.insert(0, BOTTOM)
        return out

    def vertices(self):
        return sorted(self._by_rank.get(1, []))

    def elements_of_rank(self, k):
        if k == 0:
            return [BOTTOM]
        return list(self._by_rank.get(k, []))

    def rank(self, e):
        return len(self._ver[e])

    def ver(self, e):
        return self._ver[e]

    @property
    def top_rank(self):
        return max(self._by_rank) if self._by_rank else 0

    def face(self, e, subset):
        """The unique face of e whose vertex set is the given subset."""
        sub = frozenset(subset)
        try:
            return self._faces[e][sub]
        except KeyError:
            raise ValidationError(
                "%r has no face on vertices %r" % (e, sorted(sub)))

    def le(self, a, b):
        if a is BOTTOM or a == b:
            return True
        return a in self._faces[b].values()

    def lower_covers(self, e):
        if e is BOTTOM:
            return []
        vs = self._ver[e]
        return [self._faces[e][vs - {v}] for v in sorted(vs)]

    def upper_covers(self, e):
        r = self.rank(e)
        return [f for f in self.elements_of_rank(r + 1)
                if e in self._faces[f].values() or (e is BOTTOM)]

    def maximal_elements(self):
        out = []
        for e in self.elements():
            if not self.upper_covers(e):
                out.append(e)
        return out

    def is_pure(self):
        n = self.top_rank
        return all(self.rank(e) == n for e in self.maximal_elements())

    def join_set(self, a, b):
        """Elements that are minimal upper bounds of a and b with vertex set
        ver(a) | ver(b).  Empty when a and b span no common cell."""
        target = self._ver[a] | self._ver[b]
        out = []
        for e in self.elements_of_rank(len(target)):
            if self._ver[e] == target and self.le(a, e) and self.le(b, e):
                out.append(e)
        return out

    def meet(self, a, b):
        """The common face of a and b on ver(a) & ver(b).  Only defined when
        a and b have an upper bound; all choices agree."""
        joins = self.join_set(a, b)
        if not joins:
            raise ValidationError("%r and %r have no join" % (a, b))
        target = self._ver[a] & self._ver[b]
        return self._faces[joins[0]][target]

    # --- validation ----------------------------------------------------

    def validate(self):
        for e in self.elements():
            vs = self._ver[e]
            fmap = self._faces[e]
            if len(fmap) != 2 ** len(vs):
                raise ValidationError(
                    "lower interval of %r is not boolean" % (e,))
            for sub in fmap:
                if not sub <= vs:
                    raise ValidationError(
                        "face map of %r mentions foreign vertices" % (e,))
                if self._ver[fmap[sub]] != sub:
                    raise ValidationError(
                        "face map of %r is inconsistent at %r" % (e, sorted(sub)))
        return self

    # --- sign conventions ----------------------------------------------

    def cover_pairs(self):
        """All pairs (upper, lower) of covering elements, bottom included."""
        out = []
        for e in self.elements():
            if self.rank(e) == 1:
                out.append((e, BOTTOM))
            else:
                for f in set(self.lower_covers(e)):
                    out.append((e, f))
        return out

    def default_sign_convention(self):
        """Incidence signs from the sorted vertex order: removing the t-th
        smallest vertex of a cell contributes (-1)**t, and every vertex meets
        the bottom with sign +1."""
        signs = {}
        for e in self.elements():
            vs = sorted(self._ver[e])
            if len(vs) == 1:
                signs[(e, BOTTOM)] = 1
                continue
            for t, v in enumerate(vs):
                f = self._faces[e][frozenset(vs) - {v}]
                signs[(e, f)] = (-1) ** t
        return signs

    def validate_sign_convention(self, signs):
        """Check that a sign table covers every cover pair with values +-1
        and that the resulting boundary squares to zero."""
        need = set(self.cover_pairs())
        for pair in need:
            if pair not in signs:
                raise ValidationError("sign convention misses pair %r" % (pair,))
            if signs[pair] not in (1, -1):
                raise ValidationError(
                    "sign for %r is %r, not +-1" % (pair, signs[pair]))
        self.simplex_chain_complex(signs=signs, augmented=True)
        return True

    def gauge_transform(self, signs, orientation_flips):
        """Flip the orientation of selected elements: every sign between a
        flipped element and an unflipped neighbour changes."""
        flips = set(orientation_flips)
        out = {}
        for (a, b), s in signs.items():
            factor = -1 if (a in flips) != (b in flips) else 1
            out[(a, b)] = s * factor
        return out

    # --- chain complexes and counting ----------------------------------

    def simplex_chain_complex(self, signs=None, augmented=False):
        """Chains of the cell structure underlying the poset: rank-k
        elements sit in degree k-1.  With ``augmented`` the bottom element
        spans degree -1, which computes reduced homology."""
        if signs is None:
            signs = self.default_sign_convention()
        bases = {}
        for k in range(1, self.top_rank + 1):
            elems = self.elements_of_rank(k)
            if elems:
                bases[k - 1] = elems
        if augmented:
            bases[-1] = [BOTTOM]
        boundaries = {}
        for deg, cells in bases.items():
            if deg - 1 not in bases:
                continue
            lower = bases[deg - 1]
            index = {e: i for i, e in enumerate(lower)}
            mat = [[0] * len(cells) for _ in lower]
            for j, e in enumerate(cells):
                for f in set(self.lower_covers(e)):
                    mat[index[f]][j] += signs[(e, f)]
            boundaries[deg] = mat
        return ChainComplex(bases, boundaries)

    def reduced_betti(self, field=QQ):
        """Reduced Betti numbers over a field, indexed -1 .. top_rank-1."""
        cx = self.simplex_chain_complex(augmented=True)
        return {k: cx.homology(k, field).rank
                for k in range(-1, self.top_rank)}

    def f_vector(self):
        """(f_-1, f_0, ..., f_{n-1}) with f_-1 = 1 counting the bottom."""
        n = self.top_rank
        return tuple([1] + [len(self.elements_of_rank(k))
                            for k in range(1, n + 1)])

    def h_vector(self):
        f = self.f_vector()
        n = self.top_rank
        h = []
        for k in range(n + 1):
            total = 0
            for i in range(k + 1):
                total += (-1) ** (k - i) * comb(n - i, k - i) * f[i]
            h.append(total)
        return tuple(h)

    def h_prime_vector(self, field=QQ):
        """The h-vector corrected by lower reduced Betti numbers; these are
        the diagonal dimensions that survive in quotient constructions."""
        h = self.h_vector()
        n = self.top_rank
        betti = self.reduced_betti(field)
        out = [h[0]]
        for k in range(1, n + 1):
            corr = 0
            for j in range(1, k):
                corr += (-1) ** (k - j - 1) * betti[j - 1]
            out.append(h[k] + comb(n, k) * corr)
        return tuple(out)

    # --- links and local acyclicity ------------------------------------

    def link(self, e):
        """The poset of elements above e, re-ranked.  Ids are carried over;
        the vertices of the link are the covers of e."""
        if e is BOTTOM:
            return SimplicialPoset(self.vertices(),
                                   [self._cell_spec(x) for x in self.elements()
                                    if self.rank(x) >= 2])
        above = [x for x in self.elements() if self.le(e, x) and x != e]
        base = self._ver[e]
        link_vertices = [x for x in above if self.rank(x) == self.rank(e) + 1]
        cells = []
        for x in above:
            if self.rank(x) <= self.rank(e) + 1:
                continue
            extra = sorted(self._ver[x] - base)
            lverts = [self._faces[x][base | {v}] for v in extra]
            faces = [self._faces[x][self._ver[x] - {v}] for v in extra]
            cells.append({"id": x, "vertices": lverts, "faces": faces})
        return SimplicialPoset(link_vertices, cells)

    def _cell_spec(self, e):
        return {"id": e, "vertices": sorted(self._ver[e]),
                "faces": list(set(self.lower_covers(e)))}

    def buchsbaum_check(self, field=QQ):
        """Purity plus vanishing reduced homology of every proper link below
        its top degree.  Returns (ok, list of failures)."""
        failures = []
        if not self.is_pure():
            failures.append(("purity", None))
        n = self.top_rank
        for e in self.elements():
            lk = self.link(e)
            top = n - self.rank(e)
            betti = lk.reduced_betti(field)
            for j in range(-1, top - 1):
                if betti.get(j):
                    failures.append((e, j))
        return (not failures, failures)

    def __repr__(self):
        return "<SimplicialPoset rank %d, f=%s>" % (self.top_rank,
                                                    self.f_vector())
