"""Generators for polygonal orbit spaces with holes.

The shapes produced here are flat polygons whose boundary consists of
one outer circle of walls and any number of inner circles (holes).
Every consecutive pair of walls meets in a corner, so a characteristic
row assignment is valid exactly when each such pair of rows has
determinant plus or minus one.  Supplied rows are checked; generated
rows are built from an alternating pattern that closes up around each
circle, then scrambled by a seeded unimodular change of basis and
per-row sign flips, which preserve validity.
"""

import random

from .errors import ValidationError
from .fixtures import parse_fixture


def polygon_with_holes(lengths, rows=None, seed=0, name=None):
    """A fixture for a polygon with holes.

    ``lengths`` lists the number of walls on each boundary circle, outer
    circle first; every entry must be at least two.  ``rows`` maps each
    wall id to its characteristic row; when omitted, valid rows are
    generated from the seed.  The result is a parsed fixture; invalid
    supplied rows surface as the usual corner condition error.
    """
    lengths = tuple(int(m) for m in lengths)
    if not lengths:
        raise ValidationError("at least one boundary circle is required")
    if any(m < 2 for m in lengths):
        raise ValidationError(
            "every boundary circle needs at least two walls, got %r"
            % (lengths,))

    circles = []
    next_id = 1
    for m in lengths:
        circles.append(list(range(next_id, next_id + m)))
        next_id += m
    total_vertices = next_id - 1

    cells = []
    closing_edges = []
    edge_id = total_vertices + 1
    for circle in circles:
        m = len(circle)
        for j in range(m - 1):
            cells.append({"id": edge_id,
                          "vertices": [circle[j], circle[j + 1]]})
            edge_id += 1
        cells.append({"id": edge_id,
                      "vertices": sorted((circle[0], circle[-1]))})
        closing_edges.append(edge_id)
        edge_id += 1

    if rows is None:
        rows = _random_rows(lengths, random.Random(seed))
    lam = {str(v): list(rows[v]) for v in sorted(rows)}

    interior = []
    holes = len(circles) - 1
    for i in range(1, len(circles)):
        label = "estar" if holes == 1 else "estar%d" % i
        interior.append({"id": label, "dim": 1,
                         "boundary": [[closing_edges[0], 1],
                                      [closing_edges[i], 1]]})
    interior.append({"id": "c", "dim": 2,
                     "boundary": [[v, 1] for v in range(1,
                                                        total_vertices + 1)]})

    data = {
        "name": name or "polygon_" + "_".join(str(m) for m in lengths),
        "n": 2,
        "poset": {
            "vertices": list(range(1, total_vertices + 1)),
            "cells": cells,
        },
        "lambda": lam,
        "interior_cells": interior,
        "orientable": True,
    }
    return parse_fixture(data)


def _closing_pattern(m):
    """Alternating rows that stay valid around a circle of length m."""
    out = [(1, 0) if i % 2 == 0 else (0, 1) for i in range(m)]
    if m % 2:
        out[-1] = (1, 1)
    return out


def _mix(pattern, rng):
    """Scramble rows by a change of basis and sign flips."""
    mat = ((1, 0), (0, 1))
    for _ in range(rng.randrange(2, 6)):
        k = rng.randrange(-3, 4)
        pick = rng.randrange(3)
        if pick == 0:
            step = ((1, k), (0, 1))
        elif pick == 1:
            step = ((1, 0), (k, 1))
        else:
            step = ((0, -1), (1, 0))
        mat = _mat_mul(mat, step)
    out = []
    for row in pattern:
        a, b = row
        mixed = (a * mat[0][0] + b * mat[1][0],
                 a * mat[0][1] + b * mat[1][1])
        if rng.random() < 0.5:
            mixed = (-mixed[0], -mixed[1])
        out.append(mixed)
    return out


def _mat_mul(x, y):
    return ((x[0][0] * y[0][0] + x[0][1] * y[1][0],
             x[0][0] * y[0][1] + x[0][1] * y[1][1]),
            (x[1][0] * y[0][0] + x[1][1] * y[1][0],
             x[1][0] * y[0][1] + x[1][1] * y[1][1]))


def _random_rows(lengths, rng):
    rows = {}
    vid = 1
    for m in lengths:
        for row in _mix(_closing_pattern(m), rng):
            rows[vid] = row
            vid += 1
    return rows
