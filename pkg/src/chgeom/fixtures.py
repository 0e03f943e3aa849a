"""Named test elements of SU(2,1) and seeded random generators."""

import numpy as np
from scipy.linalg import expm

from .hermitian import J, standard_lift
from .isometries import GroupElement, validate

LOX_A = validate(np.diag([2.0, 1.0, 0.5]))
B_REAL = validate([[0.5, 0.5, -0.25], [-1.0, 0.0, -0.5], [-1.0, 1.0, 0.5]])
B_BLOCK = validate([[1.25, 0, 0.75j], [0, 1, 0], [-0.75j, 0, 1.25]])
PARABOLIC_T = validate([[1, -1, -0.5], [0, 1, 1], [0, 0, 1]])
ELLIPTIC_E = validate(np.diag([1j, -1, 1j]))
SWAP_S = validate([[0, 0, -1], [0, -1, 0], [-1, 0, 0]])

LIBRARY = {
    "A": LOX_A,
    "B_R": B_REAL,
    "B_C": B_BLOCK,
    "T": PARABOLIC_T,
    "E": ELLIPTIC_E,
    "S": SWAP_S,
}


def random_lie_algebra(rng, scale=1.0):
    """Random traceless X with X^H J + J X = 0 (so expm(X) is in SU(2,1))."""
    h = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    h = (h + h.conj().T) / 2
    x = J @ (1j * h)
    x = x - np.trace(x) / 3 * np.eye(3)
    return scale * x


def random_element(rng, scale=0.6):
    """exp of a random Lie algebra element; well conditioned for small scale."""
    return GroupElement(expm(random_lie_algebra(rng, scale)))


def torus_element(u):
    """diag(u, u^-2, u) for |u| = 1; commutes with every diagonal element."""
    return GroupElement(np.diag([u, u ** -2, u]))


def random_torus(rng):
    return torus_element(np.exp(2j * np.pi * rng.random()))


def random_fixture_product(rng, length=4, pool=("A", "B_R", "B_C", "S", "T", "E")):
    """Random product of library generators (and inverses) and torus elements."""
    m = np.eye(3, dtype=complex)
    for _ in range(length):
        g = LIBRARY[pool[rng.integers(len(pool))]]
        if rng.random() < 0.5:
            g = g.inv
        m = m @ g.matrix @ random_torus(rng).matrix
    return GroupElement(m)


def conjugated(generators, Q):
    """Q g Q^-1 for each generator, so Q carries the standard picture."""
    q_inv = Q.inv
    return [Q @ g @ q_inv for g in generators]


def line_boundary_points(rng, n):
    """Boundary points of the standard complex line z2 = 0: (i s, 0)."""
    s = rng.normal(size=n) * 2
    return [standard_lift(1j * x, 0) for x in s]


def lagrangian_boundary_points(rng, n):
    """Boundary points of the real plane: (-y^2/2, y)."""
    y = rng.normal(size=n) * 2
    return [standard_lift(-(v * v) / 2, v) for v in y]


def lagrangian_interior_points(rng, n):
    out = []
    for _ in range(n):
        y = rng.normal()
        x = -(y * y) / 2 - abs(rng.normal()) - 0.05
        out.append(standard_lift(x, y))
    return out


def random_boundary_points(rng, n):
    """Generic boundary points (-|z2|^2/2 + i s, z2)."""
    z2 = rng.normal(size=n) + 1j * rng.normal(size=n)
    s = rng.normal(size=n)
    return [standard_lift(-abs(w) ** 2 / 2 + 1j * t, w) for w, t in zip(z2, s)]


def random_interior_points(rng, n):
    z2 = rng.normal(size=n) + 1j * rng.normal(size=n)
    s = rng.normal(size=n)
    depth = np.abs(rng.normal(size=n)) + 0.05
    return [standard_lift(-abs(w) ** 2 / 2 - d + 1j * t, w) for w, t, d in zip(z2, s, depth)]
