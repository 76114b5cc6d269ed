"""Characteristic matrices: one integer row of length n per vertex of a
rank-n simplicial poset.  The rows attached to the vertices of any maximal
cell must form an invertible matrix over the chosen coefficients; that is
what makes the associated quotient space a manifold.
"""

from . import snf
from .errors import StarConditionError, ValidationError
from .fields import ZZ


class CharacteristicMatrix:
    def __init__(self, poset, rows, check=True):
        self.poset = poset
        self.n = poset.top_rank
        self.rows = {}
        for v in poset.vertices():
            if v not in rows:
                raise ValidationError("no row for vertex %r" % (v,))
            row = tuple(int(x) for x in rows[v])
            if len(row) != self.n:
                raise ValidationError(
                    "row for vertex %r has length %d, expected %d"
                    % (v, len(row), self.n))
            self.rows[v] = row
        extra = set(rows) - set(self.rows)
        if extra:
            raise ValidationError("rows for unknown vertices %r" % (sorted(extra, key=repr),))
        if check and not poset.is_pure():
            raise ValidationError(
                "characteristic data needs a pure poset")

    def row(self, v):
        return self.rows[v]

    def minor(self, element, columns=None):
        """Square submatrix on the vertices of an element (sorted order) and
        the given 1-based columns (all of them by default)."""
        verts = sorted(self.poset.ver(element))
        if columns is None:
            columns = range(1, self.n + 1)
        cols = sorted(columns)
        return [[self.rows[v][j - 1] for j in cols] for v in verts]

    def check_star(self, coeffs=ZZ):
        """Verify that every maximal cell carries an invertible vertex
        matrix: determinant +-1 over Z, nonzero over a field.  Cells of
        lower rank inherit the property, so only maximal ones are checked.
        Raises StarConditionError naming the first offending cell."""
        for top in self.poset.elements_of_rank(self.n):
            det = snf.int_det(self.minor(top))
            if coeffs is ZZ:
                bad = det not in (1, -1)
            else:
                bad = coeffs.is_zero(coeffs.from_int(det))
            if bad:
                raise StarConditionError(
                    "cell %r has vertex matrix determinant %d, not invertible "
                    "over %r" % (top, det, coeffs))
        return True

    def c_coefficient(self, element, axes):
        """Signed complementary minor of an element.

        ``axes`` is a subset of {1..n} with |axes| = n - rank(element); the
        minor uses the columns outside ``axes`` and the vertices of the
        element in increasing order.  The sign alternates with the sum of
        the retained column indices.
        """
        verts = sorted(self.poset.ver(element))
        m = len(verts)
        axes = frozenset(axes)
        if not axes <= set(range(1, self.n + 1)):
            raise ValidationError("axes %r are not inside 1..%d"
                                  % (sorted(axes), self.n))
        if len(axes) != self.n - m:
            raise ValidationError(
                "element of rank %d needs %d axes, got %d"
                % (m, self.n - m, len(axes)))
        kept = [j for j in range(1, self.n + 1) if j not in axes]
        det = snf.int_det([[self.rows[v][j - 1] for j in kept] for v in verts])
        exponent = m * (m + 1) // 2 + sum(kept)
        return (-1) ** exponent * det

    def theta(self, j):
        """Coefficients of the j-th linear parameter: vertex -> its j-th
        row entry (zeros dropped)."""
        if not 1 <= j <= self.n:
            raise ValidationError("column index %d out of range" % j)
        return {v: self.rows[v][j - 1] for v in self.poset.vertices()
                if self.rows[v][j - 1]}

    def axis_subsets(self, size):
        """All subsets of {1..n} of the given size, sorted."""
        from itertools import combinations
        return [frozenset(c) for c in combinations(range(1, self.n + 1), size)]

    def __repr__(self):
        return "<CharacteristicMatrix n=%d on %d vertices>" % (
            self.n, len(self.rows))
