"""Chain complexes of free Z-modules with labeled bases, and their homology
over Z, Q, or a prime field.  Integer homology comes with representative
cycles for both free and torsion generators.
"""

from . import fields, snf
from .errors import CoefficientError, ValidationError
from .fields import ZZ


class HomologyGroup:
    """Homology in a single degree.

    Over Z: ``free_rank`` copies of Z plus cyclic summands of the orders in
    ``torsion`` (each dividing the next).  Over a field the group is a vector
    space, ``torsion`` is empty and ``free_rank`` is its dimension.
    Generator vectors are coordinate lists over the degree basis, readable
    through ``labels``.
    """

    def __init__(self, free_rank, torsion, free_generators, torsion_generators,
                 labels, coeffs):
        self.free_rank = free_rank
        self.torsion = list(torsion)
        self.free_generators = free_generators
        self.torsion_generators = torsion_generators
        self.labels = labels
        self.coeffs = coeffs

    @property
    def rank(self):
        return self.free_rank

    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def describe(self):
        name = "Z" if self.coeffs is ZZ else self.coeffs.name
        parts = []
        if self.free_rank == 1:
            parts.append(name)
        elif self.free_rank > 1:
            parts.append("%s^%d" % (name, self.free_rank))
        for t in self.torsion:
            parts.append("Z/%d" % t)
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return "<HomologyGroup %s>" % self.describe()


def _zero_group(labels, coeffs):
    return HomologyGroup(0, [], [], [], labels, coeffs)


class ChainComplex:
    """A bounded complex of finitely generated free Z-modules.

    ``bases`` maps a degree to the list of labels of its basis elements.
    ``boundaries`` maps degree k to the matrix of the boundary map from
    degree k to degree k-1: rows are indexed by the (k-1)-basis, columns by
    the k-basis.  Degrees may be any integers (degree -1 is used for
    augmented complexes).
    """

    def __init__(self, bases, boundaries, check=True):
        self.bases = {k: list(v) for k, v in bases.items() if v}
        self.boundaries = {}
        for k, mat in boundaries.items():
            if not mat or not any(len(row) for row in mat):
                continue
            self.boundaries[k] = [list(row) for row in mat]
        if check:
            self.validate()

    def degrees(self):
        return sorted(self.bases)

    def basis(self, k):
        return self.bases.get(k, [])

    def dim(self, k):
        return len(self.bases.get(k, []))

    def boundary_matrix(self, k):
        """Matrix of the boundary from degree k to degree k-1."""
        rows = self.dim(k - 1)
        cols = self.dim(k)
        mat = self.boundaries.get(k)
        if mat is None:
            return [[0] * cols for _ in range(rows)]
        return mat

    def validate(self):
        for k, mat in self.boundaries.items():
            rows = self.dim(k - 1)
            cols = self.dim(k)
            if len(mat) != rows or any(len(r) != cols for r in mat):
                raise ValidationError(
                    "boundary matrix at degree %d has shape %dx%d, expected %dx%d"
                    % (k, len(mat), len(mat[0]) if mat else 0, rows, cols))
        for k in list(self.boundaries):
            if k - 1 in self.boundaries:
                prod = snf.int_mat_mul(self.boundaries[k - 1], self.boundaries[k])
                if any(any(row) for row in prod):
                    raise ValidationError(
                        "boundary squared is nonzero between degrees %d and %d"
                        % (k, k - 2))
        return self

    def boundary_of(self, k, vec):
        return snf.int_mat_vec(self.boundary_matrix(k), vec)

    def is_cycle(self, k, vec):
        return not any(self.boundary_of(k, vec))

    def homology(self, k, coeffs=ZZ):
        labels = self.basis(k)
        if not labels:
            return _zero_group(labels, coeffs)
        if coeffs is ZZ:
            return self._homology_int(k)
        fields.require_field(coeffs)
        return self._homology_field(k, coeffs)

    def homology_all(self, coeffs=ZZ):
        return {k: self.homology(k, coeffs) for k in self.degrees()}

    def _kernel_columns(self, k):
        n = self.dim(k)
        if self.dim(k - 1) == 0:
            return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
        return snf.int_kernel(self.boundary_matrix(k))

    def _homology_int(self, k):
        labels = self.basis(k)
        kernel = self._kernel_columns(k)
        r = len(kernel)
        if r == 0:
            return _zero_group(labels, ZZ)
        kmat = [[kernel[j][i] for j in range(r)] for i in range(len(labels))]
        bdry = self.boundary_matrix(k + 1)
        m = self.dim(k + 1)
        coords = []
        for j in range(m):
            col = [bdry[i][j] for i in range(len(labels))]
            y = snf.int_solve(kmat, col)
            if y is None:
                raise ValidationError(
                    "boundary column is not a cycle in degree %d" % k)
            coords.append(y)
        if coords:
            ymat = [[coords[j][i] for j in range(m)] for i in range(r)]
            u, d, _ = snf.smith_normal_form(ymat)
            factors = snf.diagonal_entries(d)
            uinv = snf.int_inverse(u)
        else:
            factors = []
            uinv = snf.int_identity(r)
        s = len(factors)
        free_gens = []
        torsion_gens = []
        for i in range(r):
            gen_coords = [uinv[t][i] for t in range(r)]
            vec = snf.int_mat_vec(kmat, gen_coords)
            if i < s:
                if factors[i] > 1:
                    torsion_gens.append((factors[i], vec))
            else:
                free_gens.append(vec)
        torsion = [o for o, _ in torsion_gens]
        return HomologyGroup(len(free_gens), torsion, free_gens, torsion_gens,
                             labels, ZZ)

    def _homology_field(self, k, field):
        labels = self.basis(k)
        n = len(labels)
        if self.dim(k - 1):
            bdown = fields.mat_from_int(self.boundary_matrix(k), field)
            kernel = fields.nullspace(bdown, field)
        else:
            kernel = [[field.one if i == j else field.zero for i in range(n)]
                      for j in range(n)]
        if not kernel:
            return _zero_group(labels, field)
        bup = self.boundary_matrix(k + 1)
        image = []
        for j in range(self.dim(k + 1)):
            image.append([field.from_int(bup[i][j]) for i in range(n)])
        img_rank = fields.rank(image, field)
        reps = []
        working = list(image)
        current = img_rank
        for v in kernel:
            cand = working + [v]
            r2 = fields.rank(cand, field)
            if r2 > current:
                reps.append(v)
                working = cand
                current = r2
        return HomologyGroup(len(reps), [], reps, [], labels, field)


def betti_numbers(complex_, coeffs):
    """Ranks of homology in every degree, as a dict."""
    return {k: complex_.homology(k, coeffs).rank for k in complex_.degrees()}
