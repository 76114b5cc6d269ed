"""Homology of the manifold glued from a torus over the quotient data.

The manifold itself never appears as a point set.  Its homology is
assembled from three ingredients: the poset of faces, the characteristic
matrix, and the corner complex of the quotient.  Classes of the
characteristic submanifolds generate the diagonal part of a bigraded
decomposition; they satisfy relations of two kinds.  Rows of the first
kind mirror the face ring presentation, one per face-and-axes pair.  Rows
of the second kind are images of the connecting map of the quotient pair,
spread over the coordinate axes.  Everything off the diagonal is a tensor
product of quotient homology with an exterior power of the torus algebra.
"""

from math import comb

from . import fields, snf
from .errors import ValidationError
from .facering import FaceRingQuotient, GradedPresentation, hilbert_series
from .fields import QQ, ZZ
from .posets import BOTTOM


class BigradedComponent:
    """One spot of the bigraded decomposition: a free rank plus torsion
    orders, with the torsion empty over a field."""

    def __init__(self, free_rank, torsion=()):
        self.free_rank = free_rank
        self.torsion = list(torsion)

    @property
    def rank(self):
        return self.free_rank

    def __eq__(self, other):
        if isinstance(other, int):
            return self.free_rank == other and not self.torsion
        return (isinstance(other, BigradedComponent)
                and self.free_rank == other.free_rank
                and self.torsion == other.torsion)

    def __repr__(self):
        if not self.torsion:
            return "<rank %d>" % self.free_rank
        return "<rank %d + %s>" % (
            self.free_rank, "+".join("Z/%d" % t for t in self.torsion))


class TorusManifold:
    """Homology bookkeeping for the glued manifold over one quotient."""

    def __init__(self, corner, charmat):
        if corner.n != charmat.n:
            raise ValidationError(
                "corner complex has dimension %d but the characteristic "
                "matrix has %d columns" % (corner.n, charmat.n))
        self.corner = corner
        self.poset = corner.poset
        self.charmat = charmat
        self.n = corner.n
        self.signs = corner.signs
        charmat.check_star(ZZ)
        self._quotients = {}
        self._pages = {}

    def quotient(self, field=QQ):
        quo = self._quotients.get(field)
        if quo is None:
            quo = FaceRingQuotient(self.poset, self.charmat, field=field,
                                   signs=self.signs)
            self._quotients[field] = quo
        return quo

    def _axes(self, size):
        return sorted(self.charmat.axis_subsets(size),
                      key=lambda a: tuple(sorted(a)))

    # --- relation rows --------------------------------------------------

    def generators(self, q):
        """Classes generating the diagonal in degree 2q: one per
        rank-(n-q) face."""
        if q < 0 or q > self.n:
            raise ValidationError("diagonal degree %d outside 0..%d"
                                  % (q, self.n))
        return self.poset.elements_of_rank(self.n - q)

    def first_kind_rows(self, q):
        """Integer relation rows among the degree-2q generators, one per
        pair of a codimension-one face and an axis subset, with labels."""
        gens = self.generators(q)
        col = {repr(g): i for i, g in enumerate(gens)}
        k = self.n - q
        rows, labels = [], []
        if k >= 1:
            for j_elt in self.poset.elements_of_rank(k - 1):
                covers = self.poset.upper_covers(j_elt)
                for axes in self._axes(q):
                    row = [0] * len(gens)
                    for i_elt in covers:
                        row[col[repr(i_elt)]] += (
                            self.signs[(i_elt, j_elt)]
                            * self.charmat.c_coefficient(i_elt, axes))
                    rows.append(row)
                    labels.append((j_elt, tuple(sorted(axes))))
        return rows, labels

    def second_kind_rows(self, q, coeffs=ZZ):
        """Relation rows carried by the connecting map of the quotient
        pair.  Each boundary chain is paired with every axis subset of the
        matching size.  Defined only below the top diagonal degrees."""
        if q < 0 or q > self.n - 2:
            raise ValidationError(
                "second-kind rows exist in degrees 0..%d, not %d"
                % (self.n - 2, q))
        gens = self.generators(q)
        rows, labels = [], []
        for b, chain in enumerate(self.corner.delta_image(q, coeffs)):
            for axes in self._axes(q):
                row = []
                for g in gens:
                    z = chain.get(g, 0)
                    c = self.charmat.c_coefficient(g, axes)
                    if coeffs is ZZ:
                        row.append(z * c)
                    else:
                        row.append(coeffs.mul(_lift(z, coeffs),
                                              coeffs.from_int(c)))
                rows.append(row)
                labels.append((b, tuple(sorted(axes))))
        return rows, labels

    # --- diagonal pages -------------------------------------------------

    def diagonal_page(self, q, field=QQ, kind="limit"):
        """The degree-2q diagonal as a presented module: generators are
        the rank-(n-q) faces, relations are the first-kind rows plus, for
        the limit page, the second-kind rows."""
        if kind not in ("initial", "limit"):
            raise ValidationError("page kind %r is not initial or limit"
                                  % (kind,))
        key = (q, field, kind)
        page = self._pages.get(key)
        if page is not None:
            return page
        rows, labels = self.first_kind_rows(q)
        rows = [list(r) for r in rows]
        labels = [("face",) + lab for lab in labels]
        if kind == "limit" and 0 <= q <= self.n - 2:
            extra, extra_labels = self.second_kind_rows(q, field)
            rows.extend(extra)
            labels.extend(("pair",) + lab for lab in extra_labels)
        page = GradedPresentation(self.n - q, self.generators(q), rows,
                                  field, row_labels=labels)
        self._pages[key] = page
        return page

    def diagonal_dimensions(self, field=QQ, kind="limit"):
        return tuple(self.diagonal_page(q, field, kind).dimension
                     for q in range(self.n + 1))

    def _diagonal_int(self, q, kind):
        """Free rank and torsion of the integral diagonal in degree 2q."""
        rows, _ = self.first_kind_rows(q)
        rows = [list(r) for r in rows]
        if kind == "limit" and 0 <= q <= self.n - 2:
            extra, _ = self.second_kind_rows(q, ZZ)
            rows.extend(extra)
        gens = self.generators(q)
        if not rows:
            return len(gens), []
        factors = snf.invariant_factors(rows)
        free = len(gens) - len(factors)
        torsion = [f for f in factors if f > 1]
        return free, torsion

    # --- bigraded decomposition ----------------------------------------

    def bigraded_component(self, k, l, coeffs=QQ):
        """The (k, l) spot: quotient homology tensored with an exterior
        power off the diagonal, the limit page plus a pair summand on it."""
        if k < 0 or k > self.n or l < 0 or l > self.n:
            return BigradedComponent(0)
        if k == l == self.n:
            return BigradedComponent(1)
        if k == l:
            if coeffs is ZZ:
                free, torsion = self._diagonal_int(k, "limit")
            else:
                free, torsion = self.diagonal_page(k, coeffs).dimension, []
            pair = self.corner.homology("pair", k, coeffs)
            copies = comb(self.n, k)
            return BigradedComponent(free + pair.free_rank * copies,
                                     torsion + pair.torsion * copies)
        selector = "space" if k > l else "pair"
        group = self.corner.homology(selector, k, coeffs)
        copies = comb(self.n, l)
        return BigradedComponent(group.free_rank * copies,
                                 group.torsion * copies)

    def bigraded_table(self, coeffs=QQ):
        return {(k, l): self.bigraded_component(k, l, coeffs)
                for k in range(self.n + 1) for l in range(self.n + 1)}

    def total_betti(self, coeffs=QQ):
        """Ranks of the homology of the manifold, by total degree."""
        out = [0] * (2 * self.n + 1)
        for (k, l), comp in self.bigraded_table(coeffs).items():
            out[k + l] += comp.free_rank
        return tuple(out)

    def euler_characteristic(self, coeffs=QQ):
        return sum((-1) ** m * b for m, b in enumerate(self.total_betti(coeffs)))

    # --- the restriction kernel ----------------------------------------

    def kernel_of_g(self, k, field=QQ):
        """Basis rows of the part of the degree-2k diagonal killed on the
        limit page: second-kind rows reduced against the first kind.
        Empty when the matching connecting degree is above its range."""
        if k < 0 or k > self.n:
            raise ValidationError("diagonal degree %d outside 0..%d"
                                  % (k, self.n))
        q = self.n - k
        if q > self.n - 2:
            return []
        page = self.diagonal_page(q, field, kind="initial")
        rows, _ = self.second_kind_rows(q, field)
        reduced = [page.reduce(row) for row in rows]
        echelon, _ = fields.rref(reduced, field)
        return echelon

    # --- socle placement of the boundary classes -----------------------

    def novik_swartz_check(self, q, field=QQ):
        """Push every boundary homology class into the face ring quotient
        along every axis subset and report where it lands: all images must
        be socle elements, the map must be injective below the top degree,
        and on the top degree its kernel must be exactly the image of the
        connecting map tensored with the axes."""
        if q < 0 or q > self.n - 1:
            raise ValidationError("boundary degree %d outside 0..%d"
                                  % (q, self.n - 1))
        quo = self.quotient(field)
        k = self.n - q
        pres = quo.presentation(k)
        face = self.corner.boundary_complex()
        hq = face.homology(q, field)
        gens = pres.generators
        axes_list = self._axes(q)
        vectors = []
        socle_failures = 0
        for z in hq.free_generators:
            for axes in axes_list:
                vec = [field.mul(_lift(zi, field),
                                 field.from_int(self.charmat.c_coefficient(g, axes)))
                       for zi, g in zip(z, gens)]
                if not quo.in_socle(vec, k):
                    socle_failures += 1
                vectors.append(vec)
        reduced = [pres.reduce(v) for v in vectors]
        rank = fields.rank(reduced, field) if vectors else 0
        expected = hq.free_rank * len(axes_list)
        kernel = self._map_kernel(reduced, field)
        if q <= self.n - 2:
            kernel_expected = []
        else:
            kernel_expected = self._top_kernel(hq, face, q, axes_list, field)
        kernel_ok = fields.row_spaces_equal(kernel, kernel_expected, field)
        injective = rank == expected
        report = {
            "degree": q,
            "classes": hq.free_rank,
            "axes": len(axes_list),
            "rank": rank,
            "socle_ok": socle_failures == 0,
            "kernel_dim": len(kernel),
            "kernel_ok": kernel_ok,
        }
        if q <= self.n - 2:
            report["ok"] = report["socle_ok"] and injective and kernel_ok
        else:
            report["ok"] = report["socle_ok"] and kernel_ok
        return report

    def _map_kernel(self, reduced, field):
        """Coefficient rows killed by the reduced image vectors."""
        if not reduced:
            return []
        mat = [[reduced[j][i] for j in range(len(reduced))]
               for i in range(len(reduced[0]))]
        return fields.nullspace(mat, field)

    def _top_kernel(self, hq, face, q, axes_list, field):
        """The expected kernel on the top boundary degree: connecting-map
        chains, written over the homology classes, spread across the axes."""
        chains = self.corner.delta_image(q, field)
        if not chains:
            return []
        basis = face.basis(q)
        vecs = [[_lift(c.get(b, 0), field) for b in basis] for c in chains]
        coords = self.corner._homology_coordinates(vecs, hq, face, q, field)
        out = []
        for coord in coords:
            for pick in range(len(axes_list)):
                row = [field.zero] * (hq.free_rank * len(axes_list))
                for j, value in enumerate(coord):
                    row[j * len(axes_list) + pick] = _lift(value, field)
                out.append(row)
        return out

    # --- series and reports --------------------------------------------

    def equivariant_series(self, maxdeg=None, field=QQ):
        """Ranks of the equivariant cohomology by topological degree: the
        face ring dimensions in even degrees plus the quotient cohomology,
        with the constants counted once."""
        if maxdeg is None:
            maxdeg = 2 * self.n
        half = hilbert_series(self.poset, maxdeg // 2)
        out = []
        for j in range(maxdeg + 1):
            total = half[j // 2] if j % 2 == 0 else 0
            if j <= self.n:
                total += self.corner.homology("space", j, field).rank
            if j == 0:
                total -= 1
            out.append(total)
        return tuple(out)

    def consistency_report(self, field=QQ):
        """Independent recomputations of the same quantities, as a list of
        (name, ok, detail) triples."""
        out = []
        hprime = self.poset.h_prime_vector(field)
        quo = self.quotient(field)
        page_dims = self.diagonal_dimensions(field, kind="initial")
        ring_dims = tuple(quo.presentation(self.n - q).dimension
                          for q in range(self.n + 1))
        comb_dims = tuple(hprime[self.n - q] for q in range(self.n + 1))
        ok = page_dims == ring_dims == comb_dims
        out.append(("diagonal-dimensions", ok,
                    "pages %r, ring %r, counts %r"
                    % (page_dims, ring_dims, comb_dims)))

        table = self.bigraded_table(field)
        bad = [(k, l) for (k, l) in table
               if table[(k, l)].rank != table[(self.n - k, self.n - l)].rank]
        out.append(("bigraded-duality", not bad,
                    "mismatched spots %r" % (sorted(bad),)
                    if bad else "all spots match their duals"))

        chi = self.euler_characteristic(field)
        fixed = self.poset.f_vector()[self.n]
        out.append(("euler-characteristic", chi == fixed,
                    "alternating sum %d, top face count %d" % (chi, fixed)))

        ok = True
        details = []
        for q in range(self.n - 1):
            rows, _ = self.second_kind_rows(q, field)
            dim = len(self.kernel_of_g(self.n - q, field))
            details.append("degree %d: %d rows, reduced dimension %d"
                           % (q, len(rows), dim))
            if dim != len(rows):
                ok = False
        out.append(("second-kind-independence", ok,
                    "; ".join(details) if details else "no degrees in range"))
        return out


def _lift(value, field):
    return field.from_int(value) if isinstance(value, int) else value
