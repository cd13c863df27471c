"""Pencils of skew forms where every member is degenerate share a large isotropic subspace."""

import random

from zetaforge.fpgeom import common_isotropic_subspace, pencil_pfaffian, random_degenerate_pencil

rng = random.Random(0)
for q, r in ((2, 2), (3, 2), (2, 3)):
    found = 0
    for _ in range(25):
        phi, psi = random_degenerate_pencil(rng, r, q)
        assert not any(pencil_pfaffian(phi, psi))
        if common_isotropic_subspace(phi, psi, r + 1) is not None:
            found += 1
    print(f"q={q}, 2r={2 * r}: {found}/25 pencils have an isotropic subspace of dimension {r + 1}")
