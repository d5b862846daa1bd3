"""Number-basis and coherent-state primitives.

Everything here is a pure function. Weights like zeta^n / sqrt(n!) are
evaluated in the log domain so that amplitudes up to |zeta|^2 ~ 100 and
photon numbers up to several hundred stay finite in double precision.
"""

import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import gammainc, gammaln

DEFAULT_TAIL_EPSILON = 1e-12
DEFAULT_HARD_CAP = 512


@dataclass(frozen=True)
class TruncationPolicy:
    """Poisson-tail criterion used to cut off photon-number sums.

    The retained order N is the smallest one whose Poisson tail
    sum_{n>N} e^{-|zeta|^2} |zeta|^{2n} / n!  falls below tail_epsilon,
    clamped to hard_cap.
    """

    tail_epsilon: float = DEFAULT_TAIL_EPSILON
    hard_cap: int = DEFAULT_HARD_CAP

    def __post_init__(self):
        if not (0.0 < self.tail_epsilon < 1.0):
            raise ValueError(f"tail_epsilon must be in (0, 1), got {self.tail_epsilon}")
        if self.hard_cap < 1:
            raise ValueError(f"hard_cap must be >= 1, got {self.hard_cap}")


DEFAULT_POLICY = TruncationPolicy()


def oscillator_wavefunction(n, x, max_order=DEFAULT_HARD_CAP):
    """Harmonic-oscillator position eigenfunction psi_n(x).

    psi_n(x) = pi^(-1/4) (2^n n!)^(-1/2) H_n(x) exp(-x^2/2), evaluated with
    the normalized three-term recurrence
        psi_n = x sqrt(2/n) psi_{n-1} - sqrt((n-1)/n) psi_{n-2},
    which stays bounded where the raw Hermite polynomials overflow.

    x may be a scalar or an array; the result has the shape of x.
    """
    if n < 0 or n > max_order:
        raise ValueError(f"order n={n} outside [0, {max_order}]")
    x = np.asarray(x, dtype=float)
    psi_prev = np.pi ** -0.25 * np.exp(-0.5 * x * x)
    if n == 0:
        return psi_prev if psi_prev.ndim else float(psi_prev)
    psi = np.sqrt(2.0) * x * psi_prev
    for k in range(2, n + 1):
        psi, psi_prev = x * np.sqrt(2.0 / k) * psi - np.sqrt((k - 1) / k) * psi_prev, psi
    return psi if psi.ndim else float(psi)


def oscillator_wavefunctions(n_max, x, max_order=DEFAULT_HARD_CAP):
    """All psi_n(x) for n = 0..n_max at once; shape (n_max+1,) + x.shape."""
    if n_max < 0 or n_max > max_order:
        raise ValueError(f"order n_max={n_max} outside [0, {max_order}]")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty((n_max + 1,) + x.shape)
    out[0] = np.pi ** -0.25 * np.exp(-0.5 * x * x)
    if n_max >= 1:
        out[1] = np.sqrt(2.0) * x * out[0]
    for k in range(2, n_max + 1):
        out[k] = x * np.sqrt(2.0 / k) * out[k - 1] - np.sqrt((k - 1) / k) * out[k - 2]
    return out


def coherent_coefficient(zeta, n):
    """Number-basis weight e^(-|zeta|^2/2) zeta^n / sqrt(n!) of |zeta>.

    n may be an integer or an integer array.  Real zeta keeps its parity
    signs (-1)^n exactly; complex zeta accumulates the phase n*arg(zeta).
    """
    zeta = complex(zeta)
    n = np.asarray(n)
    if np.any(n < 0):
        raise ValueError("photon number n must be >= 0")
    r = abs(zeta)
    if r == 0.0:
        out = np.where(n == 0, 1.0 + 0.0j, 0.0j)
        return out if out.ndim else complex(out)
    logmag = -0.5 * r * r + n * np.log(r) - 0.5 * gammaln(n + 1.0)
    if zeta.imag == 0.0:
        sign = np.where((zeta.real > 0) | (n % 2 == 0), 1.0, -1.0)
        out = np.exp(logmag) * sign + 0.0j
    else:
        out = np.exp(logmag + 1j * n * np.angle(zeta))
    return out if out.ndim else complex(out)


def coherent_overlap(mu, nu):
    """Overlap <mu|nu> = exp(-|mu|^2/2 - |nu|^2/2 + conj(mu) nu).

    Evaluated through the identity exponent = -|mu-nu|^2/2 + i Im(conj(mu) nu)
    whose real part is never positive, so far-apart labels underflow to 0
    instead of overflowing.  Broadcasts over array arguments.
    """
    mu = np.asarray(mu, dtype=complex)
    nu = np.asarray(nu, dtype=complex)
    out = np.exp(-0.5 * np.abs(mu - nu) ** 2 + 1j * np.imag(np.conj(mu) * nu))
    return out if out.ndim else complex(out)


def truncation_order(zeta, policy=DEFAULT_POLICY):
    """Smallest N whose Poisson tail beats policy.tail_epsilon, clamped.

    Monotone nondecreasing in |zeta|.  Warns when the hard cap clamps the
    result before the tail bound is met.
    """
    lam = abs(complex(zeta)) ** 2
    orders = np.arange(policy.hard_cap + 1)
    # regularized lower incomplete gamma P(N+1, lam) equals the Poisson
    # survival probability P(X > N)
    tails = gammainc(orders + 1.0, lam)
    hits = np.nonzero(tails < policy.tail_epsilon)[0]
    if hits.size == 0:
        warnings.warn(
            f"truncation clamped at hard_cap={policy.hard_cap}; "
            f"residual Poisson tail {tails[-1]:.3e} exceeds {policy.tail_epsilon:.3e}",
            stacklevel=2,
        )
        return policy.hard_cap
    return int(hits[0])


def coherent_in_fock(mu, dim, max_order=DEFAULT_HARD_CAP):
    """|mu> expanded in the truncated number basis: component n for n < dim."""
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    if dim > max_order:
        raise ValueError(f"dim={dim} exceeds hard cap {max_order}")
    return np.atleast_1d(coherent_coefficient(mu, np.arange(dim)))
