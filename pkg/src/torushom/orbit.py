"""Cell structure of the quotient space of a torus manifold.

The poset describes the corner stratification: every proper face of rank k
becomes a cell of dimension n - k, and the incidence signs of the poset,
read upside down, give the boundary maps.  Together these cells form the
boundary of the quotient.  The user supplies the remaining cells (those
meeting the interior) explicitly, with integer boundary coefficients.

Three chain complexes live here: the face cells alone ("boundary"), the
full cell structure ("space"), and the quotient by the face cells ("pair").
The connecting map of the long exact sequence is computed on explicit
cellular representatives, which downstream code turns into relation rows.
"""

from . import fields, snf
from .chains import ChainComplex
from .errors import CoefficientError, ValidationError
from .fields import QQ, ZZ
from .posets import BOTTOM


_SELECTOR_ALIASES = {
    "boundary": "boundary", "dq": "boundary", "del": "boundary",
    "space": "space", "q": "space", "total": "space",
    "pair": "pair", "rel": "pair", "relative": "pair",
}


def _to_field(value, field):
    return field.from_int(value) if isinstance(value, int) else value


def canonical_selector(name):
    key = str(name).strip().lower()
    if key not in _SELECTOR_ALIASES:
        raise ValidationError(
            "unknown homology selector %r; use boundary, space, or rel" % (name,))
    return _SELECTOR_ALIASES[key]


class InteriorCell:
    """A cell of the quotient that is not a face cell.  The boundary is a
    list of (reference, coefficient) pairs; references name either poset
    elements (face cells) or other interior cells by id."""

    def __init__(self, cell_id, dim, boundary):
        self.id = cell_id
        self.dim = dim
        self.boundary = list(boundary)

    @classmethod
    def from_data(cls, data):
        if isinstance(data, InteriorCell):
            return data
        if isinstance(data, dict):
            try:
                cell_id = data["id"]
                dim = data["dim"]
                boundary = data.get("boundary", [])
            except KeyError as bad:
                raise ValidationError("interior cell is missing key %s" % bad)
        else:
            cell_id, dim, boundary = data
        pairs = []
        for entry in boundary:
            ref, coeff = entry
            if not isinstance(coeff, int) or isinstance(coeff, bool):
                raise ValidationError(
                    "boundary coefficient %r of cell %r is not an integer"
                    % (coeff, cell_id))
            if coeff:
                pairs.append((ref, coeff))
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
            raise ValidationError(
                "interior cell %r has bad dimension %r" % (cell_id, dim))
        return cls(cell_id, dim, pairs)


class CornerComplex:
    """Cellular model of the quotient space over a simplicial poset."""

    def __init__(self, poset, interior_cells=(), orientable=True, signs=None):
        self.poset = poset
        self.n = poset.top_rank
        self.orientable = bool(orientable)
        if signs is None:
            signs = poset.default_sign_convention()
        else:
            poset.validate_sign_convention(signs)
        self.signs = dict(signs)
        self._face_dim = {}
        for e in poset.elements():
            self._face_dim[e] = self.n - poset.rank(e)
        self.interior = []
        self._interior_dim = {}
        for data in interior_cells:
            cell = InteriorCell.from_data(data)
            if cell.id in self._face_dim or cell.id is BOTTOM:
                raise ValidationError(
                    "interior cell id %r collides with a poset element" % (cell.id,))
            if cell.id in self._interior_dim:
                raise ValidationError("duplicate interior cell id %r" % (cell.id,))
            if cell.dim > self.n:
                raise ValidationError(
                    "interior cell %r has dimension %d above the space dimension %d"
                    % (cell.id, cell.dim, self.n))
            self.interior.append(cell)
            self._interior_dim[cell.id] = cell.dim
        self._check_references()
        self._cache = {}

    def _check_references(self):
        for cell in self.interior:
            if cell.dim == 0 and cell.boundary:
                raise ValidationError(
                    "zero-dimensional cell %r has a nonempty boundary" % (cell.id,))
            for ref, _ in cell.boundary:
                if ref in self._face_dim:
                    d = self._face_dim[ref]
                elif ref in self._interior_dim:
                    d = self._interior_dim[ref]
                else:
                    raise ValidationError(
                        "cell %r references unknown cell %r" % (cell.id, ref))
                if d != cell.dim - 1:
                    raise ValidationError(
                        "cell %r of dimension %d references %r of dimension %d"
                        % (cell.id, cell.dim, ref, d))

    # --- cell bookkeeping ----------------------------------------------

    def face_cells(self, dim):
        """Face cells of a given dimension, in poset element order."""
        if dim < 0 or dim > self.n - 1:
            return []
        return list(self.poset.elements_of_rank(self.n - dim))

    def interior_cells(self, dim):
        return sorted((c.id for c in self.interior if c.dim == dim), key=repr)

    def cells(self, selector, dim):
        return list(self.complex_for(selector).basis(dim))

    def euler_characteristic(self):
        total = 0
        for e in self._face_dim:
            total += (-1) ** self._face_dim[e]
        for cell in self.interior:
            total += (-1) ** cell.dim
        return total

    # --- the three chain complexes -------------------------------------

    def complex_for(self, selector):
        key = canonical_selector(selector)
        if key not in self._cache:
            builder = {"boundary": self._build_boundary,
                       "space": self._build_space,
                       "pair": self._build_pair}[key]
            self._cache[key] = builder()
        return self._cache[key]

    def boundary_complex(self):
        return self.complex_for("boundary")

    def space_complex(self):
        return self.complex_for("space")

    def pair_complex(self):
        return self.complex_for("pair")

    def _face_boundary_matrix(self, dim, cols, lower):
        """Boundary of the face cells of one dimension: a cell of a rank-k
        element collects its covers, with the poset incidence signs."""
        index = {e: i for i, e in enumerate(lower)}
        mat = [[0] * len(cols) for _ in lower]
        for j, e in enumerate(cols):
            for f in set(self.poset.upper_covers(e)):
                mat[index[f]][j] += self.signs[(f, e)]
        return mat

    def _build_boundary(self):
        bases = {}
        for dim in range(self.n):
            cells = self.face_cells(dim)
            if cells:
                bases[dim] = cells
        boundaries = {}
        for dim in bases:
            if dim - 1 not in bases:
                continue
            boundaries[dim] = self._face_boundary_matrix(
                dim, bases[dim], bases[dim - 1])
        return ChainComplex(bases, boundaries, check=False)

    def _build_space(self):
        bases = {}
        for dim in range(self.n + 1):
            cells = self.face_cells(dim) + self.interior_cells(dim)
            if cells:
                bases[dim] = cells
        boundaries = {}
        for dim in bases:
            if dim - 1 not in bases:
                continue
            source = bases[dim]
            target = bases[dim - 1]
            index = {c: i for i, c in enumerate(target)}
            faces = self.face_cells(dim)
            mat = [[0] * len(source) for _ in target]
            face_part = self._face_boundary_matrix(
                dim, faces, self.face_cells(dim - 1))
            for j in range(len(faces)):
                for i in range(len(face_part)):
                    if face_part[i][j]:
                        mat[i][j] = face_part[i][j]
            for j, cid in enumerate(source[len(faces):], start=len(faces)):
                cell = next(c for c in self.interior if c.id == cid)
                for ref, coeff in cell.boundary:
                    mat[index[ref]][j] += coeff
            boundaries[dim] = mat
        return ChainComplex(bases, boundaries, check=False)

    def _build_pair(self):
        bases = {}
        for dim in range(self.n + 1):
            cells = self.interior_cells(dim)
            if cells:
                bases[dim] = cells
        boundaries = {}
        for dim in bases:
            if dim - 1 not in bases:
                continue
            source = bases[dim]
            target = bases[dim - 1]
            index = {c: i for i, c in enumerate(target)}
            mat = [[0] * len(source) for _ in target]
            for j, cid in enumerate(source):
                cell = next(c for c in self.interior if c.id == cid)
                for ref, coeff in cell.boundary:
                    if ref in index:
                        mat[index[ref]][j] += coeff
            boundaries[dim] = mat
        return ChainComplex(bases, boundaries, check=False)

    # --- homology ------------------------------------------------------

    def homology(self, selector, degree=None, coeffs=ZZ):
        cx = self.complex_for(selector)
        if degree is None:
            return {k: cx.homology(k, coeffs)
                    for k in range(0, self.n + 1)}
        return cx.homology(degree, coeffs)

    def betti(self, selector, coeffs=QQ):
        return {k: self.homology(selector, k, coeffs).rank
                for k in range(0, self.n + 1)}

    # --- the connecting map --------------------------------------------

    def delta_image(self, q, coeffs=ZZ):
        """Chains in the boundary complex spanning the image of the
        connecting map from the pair homology one degree up.  Each row is
        returned as a dict from face cells to coefficients.  Over the
        integers both groups involved must be torsion free."""
        if q < 0 or q > self.n - 1:
            raise ValidationError(
                "connecting map lands in degrees 0..%d, not %d" % (self.n - 1, q))
        use_int = coeffs is ZZ
        if not use_int:
            fields.require_field(coeffs)
        pair = self.pair_complex()
        space = self.space_complex()
        face = self.boundary_complex()
        hpair = pair.homology(q + 1, coeffs)
        if use_int and hpair.torsion:
            raise CoefficientError(
                "pair homology in degree %d has torsion %r; use field coefficients"
                % (q + 1, hpair.torsion))
        hface = face.homology(q, coeffs)
        if use_int and hface.torsion:
            raise CoefficientError(
                "boundary homology in degree %d has torsion %r; use field "
                "coefficients" % (q, hface.torsion))
        if not hpair.free_generators or not hface.free_generators:
            return []

        space_basis = space.basis(q + 1)
        space_index = {c: i for i, c in enumerate(space_basis)}
        face_basis = face.basis(q)
        nface = len(face_basis)
        chains = []
        for rep in hpair.free_generators:
            lifted = [0] * len(space_basis) if use_int else \
                [coeffs.zero] * len(space_basis)
            for label, value in zip(pair.basis(q + 1), rep):
                lifted[space_index[label]] = value
            if use_int:
                dvec = space.boundary_of(q + 1, lifted)
            else:
                mat = fields.mat_from_int(space.boundary_matrix(q + 1), coeffs)
                dvec = fields.mat_vec(mat, lifted, coeffs)
            tail = dvec[nface:]
            if any(tail):
                raise ValidationError(
                    "pair cycle leaks onto interior cells in degree %d" % q)
            chains.append(dvec[:nface])

        coords = self._homology_coordinates(chains, hface, face, q, coeffs)
        keep = self._independent_rows(chains, coords, use_int, coeffs)
        rows = []
        for chain in keep:
            row = {}
            for label, value in zip(face_basis, chain):
                if value:
                    row[label] = value
            rows.append(row)
        return rows

    def _homology_coordinates(self, chains, hface, face, q, coeffs):
        """Coordinates of boundary-complex cycles over the homology
        generators, after quotienting out boundaries."""
        use_int = coeffs is ZZ
        nface = face.dim(q)
        columns = [list(g) for g in hface.free_generators]
        ngen = len(columns)
        bmat = face.boundary_matrix(q + 1)
        for j in range(face.dim(q + 1)):
            col = [bmat[i][j] for i in range(nface)]
            if use_int:
                columns.append(col)
            else:
                columns.append([coeffs.from_int(x) for x in col])
        mat = [[columns[j][i] for j in range(len(columns))]
               for i in range(nface)]
        coords = []
        for chain in chains:
            if use_int:
                sol = snf.int_solve(mat, chain)
            else:
                sol = fields.solve(mat, chain, coeffs)
            if sol is None:
                raise ValidationError(
                    "connecting-map chain is not a cycle of the boundary "
                    "complex in degree %d" % q)
            coords.append(sol[:ngen])
        return coords

    def _independent_rows(self, chains, coords, use_int, coeffs):
        """Select chains whose homology coordinates form a basis of the
        span of all of them.  Over the integers a greedy choice can span a
        smaller lattice; in that case recombine through the normal form."""
        if not chains:
            return []
        width = len(coords[0])
        if width == 0:
            return []
        if use_int:
            keep, kept_rows = [], []
            for chain, row in zip(chains, coords):
                if snf.int_rank(kept_rows + [row]) > len(kept_rows):
                    keep.append(chain)
                    kept_rows.append(row)
            if self._spans_lattice(kept_rows, coords):
                return keep
            u, d, _ = snf.smith_normal_form(coords)
            combined = snf.int_mat_mul(u, coords)
            out = []
            for r, row in enumerate(combined):
                if not any(row):
                    continue
                mixed = [0] * len(chains[0])
                for j, factor in enumerate(u[r]):
                    if factor:
                        for i, value in enumerate(chains[j]):
                            mixed[i] += factor * value
                out.append(mixed)
            return out
        keep, kept_rows = [], []
        for chain, row in zip(chains, coords):
            if fields.rank(kept_rows + [row], coeffs) > len(kept_rows):
                keep.append(chain)
                kept_rows.append(row)
        return keep

    @staticmethod
    def _spans_lattice(kept_rows, all_rows):
        if not kept_rows:
            return all(not any(row) for row in all_rows)
        mat = [[kept_rows[j][i] for j in range(len(kept_rows))]
               for i in range(len(kept_rows[0]))]
        for row in all_rows:
            if snf.int_solve(mat, row) is None:
                return False
        return True

    # --- validation ----------------------------------------------------

    def validate(self):
        """Structural soundness report; an empty list means the complex is
        usable.  Checks the boundary square on all three complexes and,
        when the orientability flag is set, the expected top pair class."""
        problems = []
        for selector in ("boundary", "space", "pair"):
            try:
                self.complex_for(selector).validate()
            except ValidationError as bad:
                problems.append("%s complex: %s" % (selector, bad))
        if not problems and self.orientable:
            top = self.pair_complex().homology(self.n, QQ)
            if top.rank != 1:
                problems.append(
                    "orientable flag set but the pair homology in degree %d "
                    "has rank %d, not 1" % (self.n, top.rank))
        return problems

    def consistency_violations(self, field=QQ):
        """Cross-checks between independently computed quantities: the cell
        count against homology, the boundary complex against the poset's
        own cell structure, and the connecting map against the kernel of
        the inclusion."""
        problems = []
        problems.extend(self._euler_violations(field))
        problems.extend(self._transpose_duality_violations(field))
        problems.extend(self._exactness_violations(field))
        return problems

    def _euler_violations(self, field):
        by_cells = self.euler_characteristic()
        by_ranks = sum((-1) ** k * self.homology("space", k, field).rank
                       for k in range(self.n + 1))
        if by_cells != by_ranks:
            return ["cell count gives Euler characteristic %d but homology "
                    "gives %d" % (by_cells, by_ranks)]
        return []

    def _transpose_duality_violations(self, field):
        """The boundary complex reads the poset's incidence matrices upside
        down, so its homology must match the poset cell structure in the
        complementary degree; this is the duality of the closed boundary."""
        problems = []
        simplex = self.poset.simplex_chain_complex(signs=self.signs)
        for q in range(self.n):
            left = self.homology("boundary", q, field).rank
            right = simplex.homology(self.n - 1 - q, field).rank
            if left != right:
                problems.append(
                    "boundary homology rank %d in degree %d does not match "
                    "the complementary poset rank %d" % (left, q, right))
        return problems

    def _exactness_violations(self, field):
        """The image of the connecting map must agree with the kernel of
        the map induced by inclusion, degree by degree."""
        problems = []
        face = self.boundary_complex()
        space = self.space_complex()
        for q in range(self.n):
            hface = face.homology(q, field)
            if not hface.free_generators:
                if self.delta_image(q, field):
                    problems.append(
                        "connecting map hits trivial homology in degree %d" % q)
                continue
            delta_rows = []
            face_basis = face.basis(q)
            for row in self.delta_image(q, field):
                delta_rows.append([_to_field(row.get(c, 0), field)
                                   for c in face_basis])
            delta_coords = self._homology_coordinates(
                delta_rows, hface, face, q, field) if delta_rows else []
            kernel_coords = self._inclusion_kernel(q, hface, face, space, field)
            if not fields.row_spaces_equal(delta_coords, kernel_coords, field):
                problems.append(
                    "connecting-map image and inclusion kernel differ in "
                    "degree %d" % q)
        return problems

    def _inclusion_kernel(self, q, hface, face, space, field):
        """Coordinate rows spanning the kernel of the inclusion-induced map
        on degree-q homology, over the boundary homology generators."""
        space_basis = space.basis(q)
        space_index = {c: i for i, c in enumerate(space_basis)}
        columns = []
        for gen in hface.free_generators:
            col = [field.zero] * len(space_basis)
            for label, value in zip(face.basis(q), gen):
                col[space_index[label]] = _to_field(value, field)
            columns.append(col)
        ngen = len(columns)
        bmat = space.boundary_matrix(q + 1)
        for j in range(space.dim(q + 1)):
            columns.append([field.from_int(bmat[i][j])
                            for i in range(len(space_basis))])
        mat = [[columns[j][i] for j in range(len(columns))]
               for i in range(len(space_basis))]
        out = []
        for vec in fields.nullspace(mat, field):
            head = vec[:ngen]
            if any(head):
                out.append(head)
        return out
