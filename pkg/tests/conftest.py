"""Shared helpers: random states and independent brute-force oracles.

The oracles here deliberately avoid the package's combinatoric shortcuts:
two-mode transforms are expanded by repeated polynomial multiplication in
the creation operators, one factor at a time.
"""

from __future__ import annotations

import math
import random

from loqc_ancilla import SparseState


def random_state(rng: random.Random, modes: int, max_photons: int, n_terms: int = 4) -> SparseState:
    keys = set()
    guard = 0
    while len(keys) < n_terms and guard < 100:
        guard += 1
        occ = [0] * modes
        for _ in range(rng.randint(0, max_photons)):
            occ[rng.randrange(modes)] += 1
        keys.add(tuple(occ))
    terms = {
        k: complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for k in keys
    }
    return SparseState(modes, terms).normalized()


def random_qubit(rng: random.Random):
    from loqc_ancilla import InputQubit

    return InputQubit.of(
        complex(rng.uniform(-1, 1), rng.uniform(-1, 1)),
        complex(rng.uniform(-1, 1), rng.uniform(-1, 1)),
    )


# ----------------------------------------------------------------------
# polynomial oracle for two-mode linear transforms
# ----------------------------------------------------------------------


def _poly_mul(p1: dict, p2: dict) -> dict:
    out: dict = {}
    for (i1, j1), c1 in p1.items():
        for (i2, j2), c2 in p2.items():
            key = (i1 + i2, j1 + j2)
            out[key] = out.get(key, 0j) + c1 * c2
    return out


def poly_two_mode_image(occ: tuple[int, int], matrix) -> dict:
    """Image of |occ> under a 2x2 mode transform, by brute expansion.

    Each creation operator is substituted by its transformed row and the
    product polynomial is multiplied out factor by factor; coefficients are
    then converted back to Fock amplitudes with the factorial weights.
    """
    p, q = occ
    start = 1.0 / math.sqrt(math.factorial(p) * math.factorial(q))
    poly = {(0, 0): complex(start)}
    row0 = {(1, 0): complex(matrix[0][0]), (0, 1): complex(matrix[0][1])}
    row1 = {(1, 0): complex(matrix[1][0]), (0, 1): complex(matrix[1][1])}
    for _ in range(p):
        poly = _poly_mul(poly, row0)
    for _ in range(q):
        poly = _poly_mul(poly, row1)
    return {
        key: c * math.sqrt(math.factorial(key[0]) * math.factorial(key[1]))
        for key, c in poly.items()
        if abs(c) > 0
    }


def beamsplitter_matrix(t: float):
    r = math.sqrt(1.0 - t * t)
    return [[t, 1j * r], [1j * r, t]]


def dense_two_mode_matrix(matrix, max_total: int):
    """Dense transform matrix on the 2-mode Fock space with <= max_total photons."""
    basis = [
        (p, total - p) for total in range(max_total + 1) for p in range(total + 1)
    ]
    index = {b: i for i, b in enumerate(basis)}
    dim = len(basis)
    dense = [[0j] * dim for _ in range(dim)]
    for j, occ in enumerate(basis):
        image = poly_two_mode_image(occ, matrix)
        for key, amp in image.items():
            dense[index[key]][j] = amp
    return basis, dense


def assert_dense_unitary(dense, tol: float = 1e-12) -> None:
    dim = len(dense)
    for i in range(dim):
        for j in range(dim):
            acc = 0j
            for k in range(dim):
                acc += dense[k][i].conjugate() * dense[k][j]
            target = 1.0 if i == j else 0.0
            assert abs(acc - target) < tol, (i, j, acc)
