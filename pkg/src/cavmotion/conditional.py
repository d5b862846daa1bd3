"""Conditional entangling of two trapped atoms sharing one cavity mode.

The joint state after the intensity-dependent displacement interaction is a
photon-number sum of products of atomic coherent states.  Measuring the
field quadrature X = (c + c^dag)/sqrt(2) with outcome x projects the atoms
onto an entangled superposition; the degree of entanglement is quantified
by the linear entropy of either reduced atom, and the expected yield per
measurement by entropy times outcome density.

The atomic coherent labels grow linearly with photon number, so reduced
density matrices are evaluated directly in the non-orthogonal coherent
basis through Gram matrices (never by expanding in a huge number basis --
that expansion exists separately as a brute-force cross-check).
"""

from dataclasses import dataclass

import numpy as np

from .fock import (
    DEFAULT_POLICY,
    coherent_coefficient,
    coherent_in_fock,
    coherent_overlap,
    oscillator_wavefunctions,
    truncation_order,
)

# conditioning divides by the outcome density, which amplifies roundoff
# garbage once the density is this far into the denormal range
PROBABILITY_FLOOR = 1e-300

# the Gram purity kernel costs a few dense (n_max+1)^2 matmuls per outcome;
# past this order a profile stops being an interactive computation
PROFILE_ORDER_CAP = 130

DEFAULT_X_GRID = np.linspace(-4.0, 4.0, 161)


class UnresolvableOutcomeError(ValueError):
    """Raised when an outcome's probability density underflows to nothing."""


@dataclass
class JointState:
    """Evolved field+atoms state in photon-number-indexed form.

    coeffs[n] carries the coherent weight of |n> times the accumulated
    self-Kerr phase; labels[n] is the coherent amplitude shared by both
    atoms when the field holds n photons.
    """

    kappa: float
    zeta: complex
    time: float
    n_max: int
    coeffs: np.ndarray
    labels: np.ndarray


@dataclass
class ConditionalResult:
    """Joint atomic state conditioned on quadrature outcome x."""

    x: float
    cond_coeffs: np.ndarray
    prob_density: float
    lin_entropy: float
    efficiency: float


@dataclass
class ProfilePoint:
    """One grid point of an efficiency profile; error marks a skipped point."""

    x: float
    result: ConditionalResult | None = None
    error: str | None = None


def evolve(zeta, kappa, time, policy=DEFAULT_POLICY):
    """Propagate the ground-state atoms + coherent field to scaled time t.

    coeffs[n] = e^(-|zeta|^2/2) zeta^n/sqrt(n!) * exp(2i kappa^2 n^2 (t - sin t))
    labels[n] = n kappa (1 - e^(-it))
    """
    if kappa < 0:
        raise ValueError(f"kappa must be >= 0, got {kappa}")
    zeta = complex(zeta)
    n_max = truncation_order(zeta, policy)
    ns = np.arange(n_max + 1)
    kerr = np.exp(2j * kappa**2 * ns.astype(float) ** 2 * (time - np.sin(time)))
    coeffs = np.atleast_1d(coherent_coefficient(zeta, ns)) * kerr
    labels = ns * (kappa * (1.0 - np.exp(-1j * time)))
    return JointState(kappa=kappa, zeta=zeta, time=time, n_max=n_max,
                      coeffs=coeffs, labels=labels)


def probability_density(state, x):
    """Outcome density P(x) = sum_n |coeffs[n]|^2 psi_n(x)^2.

    Diagonal in photon number: each atom pair rides a normalized coherent
    state, so this drops the inter-label overlap cross terms (they vanish
    identically under the x-integral and are exponentially small at the
    operating times where the labels are well separated).  Exactly even
    in x for real zeta.
    """
    x = np.asarray(x, dtype=float)
    psis = oscillator_wavefunctions(state.n_max, x)
    weights = np.abs(state.coeffs) ** 2
    dens = np.einsum("n,n...->...", weights, psis**2)
    return float(dens[0]) if x.ndim == 0 else dens


def gram_matrix(labels):
    """Pairwise coherent overlaps G[m, n] = <labels[m] | labels[n]>."""
    labels = np.asarray(labels, dtype=complex)
    return np.atleast_2d(coherent_overlap(labels[:, None], labels[None, :]))


def bipartite_norm_sq(coeffs, labels):
    """Squared norm of sum_n c_n |mu_n>|mu_n> in the product coherent basis."""
    g = gram_matrix(labels)
    c = np.asarray(coeffs, dtype=complex)
    return float(np.real(np.conj(c) @ ((g * g) @ c)))


def purity_gram(cond_coeffs, labels):
    """Tr[(Tr_b rho)^2] for the two-atom state, in the coherent basis.

    With G the label Gram matrix and A[m,n] = c_n conj(c_m) G[m,n], the
    quartic sum over (n, m, p, q) contracts to sum(G * (A G^T A)); both
    atoms share the same labels so one G serves both subsystems.
    """
    c = np.asarray(cond_coeffs, dtype=complex)
    labels = np.asarray(labels, dtype=complex)
    if labels.size and np.all(labels == labels[0]):
        # identical labels factor the joint state into a product; the
        # quartic form below is ill-conditioned there, so short-circuit
        return 1.0
    g = gram_matrix(labels)
    a = g * np.outer(np.conj(c), c)
    return float(np.real(np.sum(g * (a @ g.T @ a))))


def purity_bruteforce(cond_coeffs, labels, dim):
    """Independent purity check via explicit partial trace in the number basis.

    Expands both atoms in a dim-dimensional number basis, forms the reduced
    density matrix of atom a and returns the trace of its square.  dim must
    hold every coherent label to 1e-10 in norm.
    """
    c = np.asarray(cond_coeffs, dtype=complex)
    labels = np.asarray(labels, dtype=complex)
    vecs = np.array([coherent_in_fock(mu, dim) for mu in labels])
    norms = np.sum(np.abs(vecs) ** 2, axis=1)
    if np.any(norms < 1.0 - 1e-10):
        worst = float(norms.min())
        raise ValueError(f"dim={dim} too small: coherent norm {worst:.12f} < 1 - 1e-10")
    # joint amplitude matrix M[i, j] = <i|_a <j|_b Psi
    m = np.einsum("n,ni,nj->ij", c, vecs, vecs)
    rho_a = m @ m.conj().T
    return float(np.real(np.trace(rho_a @ rho_a)))


def condition_on_quadrature(state, x):
    """Project the field on quadrature outcome x and renormalize the atoms.

    The returned prob_density is the squared norm of the projected state in
    the non-orthogonal product basis (the inverse square of the
    normalization constant), so efficiency = lin_entropy * prob_density
    holds exactly.
    """
    x = float(x)
    if probability_density(state, x) < PROBABILITY_FLOOR:
        raise UnresolvableOutcomeError(
            f"outcome x={x} has probability density below {PROBABILITY_FLOOR}")
    psis = oscillator_wavefunctions(state.n_max, x)[:, 0]
    raw = state.coeffs * psis
    norm_sq = bipartite_norm_sq(raw, state.labels)
    if not (norm_sq > PROBABILITY_FLOOR):
        raise UnresolvableOutcomeError(
            f"outcome x={x} has probability density below {PROBABILITY_FLOOR}")
    cond = raw / np.sqrt(norm_sq)
    lin_entropy = 1.0 - purity_gram(cond, state.labels)
    return ConditionalResult(
        x=x,
        cond_coeffs=cond,
        prob_density=norm_sq,
        lin_entropy=lin_entropy,
        efficiency=lin_entropy * norm_sq,
    )


def efficiency_profile(zeta, kappa, time, x_grid=None, policy=DEFAULT_POLICY):
    """Conditional results over a grid of quadrature outcomes.

    Unresolvable outcomes become flagged rows instead of aborting the
    profile.  Cost: a few dense (n_max+1)-sized matmuls per grid point,
    so the truncation order is capped at PROFILE_ORDER_CAP.
    """
    if x_grid is None:
        x_grid = DEFAULT_X_GRID
    x_grid = np.asarray(x_grid, dtype=float)
    if x_grid.size and np.any(np.diff(x_grid) < 0):
        raise ValueError("x_grid must be sorted ascending")
    state = evolve(zeta, kappa, time, policy)
    if state.n_max > PROFILE_ORDER_CAP:
        raise ValueError(
            f"truncation order {state.n_max} exceeds profile cap {PROFILE_ORDER_CAP}; "
            "loosen the truncation policy or reduce |zeta|")
    points = []
    for x in x_grid:
        try:
            points.append(ProfilePoint(x=float(x), result=condition_on_quadrature(state, x)))
        except UnresolvableOutcomeError as exc:
            points.append(ProfilePoint(x=float(x), error=str(exc)))
    return points
