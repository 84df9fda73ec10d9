"""Hamiltonian and eigensystem of two capacitively coupled double quantum dots.

Basis order is ``(|LL>, |LR>, |RL>, |RR>)`` with ``sigma_z |L> = +|L>``.
All energies are in micro-eV.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

BASIS = ("LL", "LR", "RL", "RR")

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]])
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]])
IDENTITY = np.eye(2)

SYMMETRY_TOL = 1e-12
JACOBI_OFFDIAG_TOL = 1e-13
JACOBI_MAX_SWEEPS = 50


class InvalidParams(ValueError):
    pass


class DegenerateConstruction(ArithmeticError):
    """The closed-form eigenvector normalization vanishes for these couplings."""


class NonSymmetric(ValueError):
    pass


class NoConvergence(RuntimeError):
    pass


@dataclass(frozen=True)
class DqdParams:
    """Couplings at one cycle endpoint: two tunnelings and the Coulomb coupling."""

    delta1: float
    delta2: float
    v: float

    def __post_init__(self):
        for name in ("delta1", "delta2", "v"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise InvalidParams(f"{name} must be finite, got {value!r}")
            if value < 0:
                raise InvalidParams(f"{name} must be >= 0, got {value!r}")
            object.__setattr__(self, name, value)

    @property
    def n_minus(self) -> float:
        return self.delta1 - self.delta2

    @property
    def n_plus(self) -> float:
        return self.delta1 + self.delta2

    def swapped(self) -> "DqdParams":
        """Exchange the two tunneling couplings."""
        return DqdParams(self.delta2, self.delta1, self.v)


@dataclass(frozen=True)
class Spectrum:
    """Four eigenenergies, in closed-form labeling and ascending.

    ``eigvecs`` (when built) has one row per entry of ``e_paper``: row ``k`` is
    the unit eigenvector of energy ``e_paper[k]`` in :data:`BASIS` order.
    """

    e_paper: tuple[float, float, float, float]
    e_sorted: tuple[float, float, float, float]
    n_minus: float
    n_plus: float
    eigvecs: np.ndarray | None = field(default=None, compare=False)


def hamiltonian_matrix(p: DqdParams) -> np.ndarray:
    h = (
        p.delta1 * np.kron(SIGMA_X, IDENTITY)
        + p.delta2 * np.kron(IDENTITY, SIGMA_X)
        + p.v * np.kron(SIGMA_Z, SIGMA_Z)
    )
    # kron of real symmetric factors is already exactly symmetric; keep it so
    return 0.5 * (h + h.T)


def eigenenergies(p: DqdParams) -> Spectrum:
    n_minus, n_plus = p.n_minus, p.n_plus
    e1 = -math.hypot(n_minus, p.v)
    e2 = -math.hypot(n_plus, p.v)
    e_paper = (e1, e2, -e1, -e2)
    return Spectrum(
        e_paper=e_paper,
        e_sorted=tuple(sorted(e_paper)),
        n_minus=n_minus,
        n_plus=n_plus,
    )


def _pair_coefficients(n: float, v: float) -> tuple[float, float]:
    """``(alpha * n, alpha * A)`` with A = V + sqrt(n^2 + V^2).

    Scaled by max(|n|, A) before normalizing so subnormal couplings stay finite.
    """
    a = v + math.hypot(n, v)
    scale = max(abs(n), a)
    n_s, a_s = n / scale, a / scale
    alpha = 1.0 / (math.sqrt(2.0) * math.hypot(n_s, a_s))
    return alpha * n_s, alpha * a_s


def eigenstates(p: DqdParams) -> Spectrum:
    """Closed-form eigenstates.

    The closed-form states pair with energies as follows (rows reordered to
    match ``e_paper``)::

        e_paper[0] = -sqrt(n-^2 + V^2)  <->  alpha-[n-(-LL+RR) + A-(-LR+RL)]
        e_paper[1] = -sqrt(n+^2 + V^2)  <->  alpha+[n+(LL+RR) - A+(LR+RL)]
        e_paper[2] = +sqrt(n-^2 + V^2)  <->  alpha-[A-(-LL+RR) + n-(LR-RL)]
        e_paper[3] = +sqrt(n+^2 + V^2)  <->  alpha+[A+(LL+RR) + n+(LR+RL)]

    Raises DegenerateConstruction when ``V = 0`` and ``n-`` (or ``n+``) is 0.
    """
    spec = eigenenergies(p)
    n_m, n_p = spec.n_minus, spec.n_plus
    if p.v == 0.0 and n_m == 0.0:
        raise DegenerateConstruction("V = 0 and delta1 = delta2: the n- pair is degenerate at E = 0")
    if p.v == 0.0 and n_p == 0.0:
        raise DegenerateConstruction("V = 0 and delta1 = delta2 = 0: the n+ pair is degenerate at E = 0")

    nm, am = _pair_coefficients(n_m, p.v)
    np_, ap = _pair_coefficients(n_p, p.v)
    rows = np.array(
        [
            [-nm, -am, am, nm],
            [np_, -ap, -ap, np_],
            [-am, nm, -nm, am],
            [ap, np_, np_, ap],
        ]
    )
    rows.setflags(write=False)
    return Spectrum(spec.e_paper, spec.e_sorted, n_m, n_p, eigvecs=rows)


def diagonalize_oracle(m) -> tuple[np.ndarray, np.ndarray]:
    """Classical Jacobi eigensolver for small dense symmetric matrices.

    Repeatedly annihilates the largest off-diagonal element by a plane
    rotation. Returns ``(eigenvalues ascending, eigenvectors as columns)``.
    """
    a = np.array(m, dtype=float)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    scale = float(np.linalg.norm(a))
    if np.max(np.abs(a - a.T), initial=0.0) > SYMMETRY_TOL * max(1.0, scale):
        raise NonSymmetric("matrix is not symmetric within tolerance")
    a = 0.5 * (a + a.T)
    q = np.eye(n)
    threshold = JACOBI_OFFDIAG_TOL * scale
    max_rotations = JACOBI_MAX_SWEEPS * n * (n - 1) // 2

    for _ in range(max_rotations + 1):
        off = np.abs(a - np.diag(np.diag(a)))
        i, j = np.unravel_index(np.argmax(off), off.shape)
        if off[i, j] <= threshold:
            break
        if i > j:
            i, j = j, i
        apq = a[i, j]
        theta = (a[j, j] - a[i, i]) / (2.0 * apq)
        t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
        c = 1.0 / math.sqrt(t * t + 1.0)
        s = t * c
        rot = np.eye(n)
        rot[i, i] = rot[j, j] = c
        rot[i, j] = s
        rot[j, i] = -s
        a = rot.T @ a @ rot
        a[i, j] = a[j, i] = 0.0
        q = q @ rot
    else:
        raise NoConvergence(f"Jacobi iteration exceeded {JACOBI_MAX_SWEEPS} sweeps")

    values = np.diag(a).copy()
    order = np.argsort(values, kind="stable")
    return values[order], q[:, order]
