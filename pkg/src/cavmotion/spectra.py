"""Linearized quantum fluctuations around the cascaded steady state.

Fluctuation operators are stacked as
    v = (a, a+, b, b+, c1, c1+, c2, c2+)
and obey i w v(w) = M v(w) + v_in(w), so v(w) = T(w) v_in(w) with
T(w) = (i w I - M)^(-1).  The cascade makes the second cavity's input the
first one's output: its drive term gamma*c1 sits inside M while the
re-entering vacuum appears as -sqrt(gamma) c1_in in slots 7-8 of v_in,
which is what produces the cross entries of the input correlation matrix.

All frequency-domain second moments are reported delta-stripped: as the
coefficient of delta(w + w'), with same-sign pairings (coefficient of
delta(2w)) dropped for w != 0.
"""

from dataclasses import dataclass

import numpy as np

from .cascade import steady_state

# row-combination vectors for the collective atomic quadratures
U_QA = np.array([1, 1, 0, 0, 0, 0, 0, 0], dtype=complex)
U_PA = np.array([-1j, 1j, 0, 0, 0, 0, 0, 0], dtype=complex)
U_QB = np.array([0, 0, 1, 1, 0, 0, 0, 0], dtype=complex)
U_PB = np.array([0, 0, -1j, 1j, 0, 0, 0, 0], dtype=complex)
U_Q_PLUS = U_QA + U_QB
U_P_MINUS = U_PA - U_PB

COMMUTATOR_FLOOR = 1e-30


class SingularTransferError(ArithmeticError):
    """(i w I - M) could not be inverted to working precision."""


@dataclass
class NoiseModel:
    """Delta-stripped input second moments d and commutators k = d - d^T."""

    d: np.ndarray
    k: np.ndarray


@dataclass
class SpectrumPoint:
    """Collective EPR variances and entanglement degree at one frequency."""

    omega: float
    s_qplus: float
    s_pminus: float
    commutator: complex
    e_degree: float

    @property
    def variance_product(self):
        """s_qplus * s_pminus: the degree under a fixed equal-time
        commutator normalization |<[q, p]>|^2/4 = 1 (diagnostic)."""
        return self.s_qplus * self.s_pminus


@dataclass
class SweepPoint:
    """One drive point of an amplitude sweep."""

    drive: float
    branch1: str
    branch2: str
    intensity1: float
    intensity2: float
    stable: bool
    e_degree: float
    jumped: bool = False
    error: str | None = None


def build_drift(params, steady):
    """8x8 drift generator of the fluctuations around the steady state.

    Atom blocks are bare damped oscillators; atom-field coupling rows carry
    i chi zeta_j; cavity rows carry the intensity-shifted detunings
    Delta_j + chi (alpha + alpha*) and the one-way cascade feed gamma.
    """
    chi, g = params.chi, params.gamma
    z1, z2 = steady.zeta1, steady.zeta2
    pole = params.Gamma / 2.0 + 1j * params.Omega
    d1 = params.Delta1 + chi * 2.0 * steady.alpha.real
    d2 = params.Delta2 + chi * 2.0 * steady.beta.real

    m = np.zeros((8, 8), dtype=complex)
    m[0, 0] = -pole
    m[1, 1] = -pole.conjugate()
    m[2, 2] = -pole
    m[3, 3] = -pole.conjugate()

    m[0, 4], m[0, 5] = -1j * chi * z1.conjugate(), -1j * chi * z1
    m[1, 4], m[1, 5] = 1j * chi * z1.conjugate(), 1j * chi * z1
    m[2, 6], m[2, 7] = -1j * chi * z2.conjugate(), -1j * chi * z2
    m[3, 6], m[3, 7] = 1j * chi * z2.conjugate(), 1j * chi * z2

    m[4, 0] = m[4, 1] = -1j * chi * z1
    m[5, 0] = m[5, 1] = 1j * chi * z1.conjugate()
    m[6, 2] = m[6, 3] = -1j * chi * z2
    m[7, 2] = m[7, 3] = 1j * chi * z2.conjugate()

    m[4, 4] = -g / 2.0 - 1j * d1
    m[5, 5] = -g / 2.0 + 1j * d1
    m[6, 6] = -g / 2.0 - 1j * d2
    m[7, 7] = -g / 2.0 + 1j * d2
    m[6, 4] = g
    m[7, 5] = g
    return m


def build_noise(params):
    """Input correlation matrix d and commutator matrix k for vacuum inputs.

    Nonzero entries (1-based): d12 = d34 = Gamma, d56 = d78 = gamma, and the
    shared-vacuum cascade cross terms d58 = d76 = -gamma.
    """
    d = np.zeros((8, 8))
    d[0, 1] = d[2, 3] = params.Gamma
    d[4, 5] = d[6, 7] = params.gamma
    d[4, 7] = d[6, 5] = -params.gamma
    return NoiseModel(d=d, k=d - d.T)


def transfer(drift, omega):
    """T(w) = (i w I - M)^(-1), with the inversion residual enforced.

    Raises SingularTransferError naming w when the matrix is singular or
    the identity defect exceeds 1e-10 relative to row norms (this can only
    happen at an instability threshold).
    """
    lhs = 1j * omega * np.eye(8) - drift
    try:
        t = np.linalg.solve(lhs, np.eye(8, dtype=complex))
    except np.linalg.LinAlgError as exc:
        raise SingularTransferError(f"transfer matrix singular at omega={omega}") from exc
    defect = np.abs(lhs @ t - np.eye(8))
    row_norms = np.maximum(np.abs(lhs).sum(axis=1), 1.0)
    if np.any(defect > 1e-10 * row_norms[:, None]):
        raise SingularTransferError(
            f"transfer inversion at omega={omega} lost precision "
            f"(defect {float(np.max(defect / row_norms[:, None])):.3e})")
    return t


def correlation_matrix(drift, noise, omega):
    """Delta-stripped second moments C(w) = T(w) d T(-w)^T of the fluctuations."""
    return transfer(drift, omega) @ noise.d @ transfer(drift, -omega).T


def _hermitian_pair(drift, mat, omega, u_left, u_right):
    """(1/4)[u_l A(w) u_r + u_l A(-w) u_r] with A(v) = T(v) mat T(-v)^T.

    This is the delta-stripped quadratic form of the hermitian combinations
    [O(w) + O(-w)]/2; the same-frequency pairings carry delta(2w) and are
    dropped.
    """
    tp = transfer(drift, omega)
    tm = transfer(drift, -omega)
    ap = tp @ mat @ tm.T
    am = tm @ mat @ tp.T
    return 0.25 * (u_left @ ap @ u_right + u_left @ am @ u_right)


def epr_spectra(drift, noise, omega):
    """Collective EPR variances, commutator spectrum and degree at omega.

    s_qplus and s_pminus are the symmetrized variances of q_a + q_b and
    p_a - p_b; the commutator is the spectral <[q_a(w), p_a(w)]> built from
    the state-independent input commutators; the degree is their ratio
        e = s_qplus s_pminus / (|commutator|^2 / 4),
    flagged as EPR-correlated when it drops below one.
    """
    s_q = _hermitian_pair(drift, noise.d, omega, U_Q_PLUS, U_Q_PLUS).real
    s_p = _hermitian_pair(drift, noise.d, omega, U_P_MINUS, U_P_MINUS).real
    comm = _hermitian_pair(drift, noise.k, omega, U_QA, U_PA)
    denom = 0.25 * abs(comm) ** 2
    if abs(comm) < COMMUTATOR_FLOOR:
        raise ArithmeticError(
            f"degenerate commutator spectrum |{comm}| at omega={omega}")
    return SpectrumPoint(
        omega=float(omega),
        s_qplus=float(s_q),
        s_pminus=float(s_p),
        commutator=complex(comm),
        e_degree=float(s_q * s_p / denom),
    )


def classify_stability(drift):
    """(all eigenvalues strictly damped?, the eigenvalues themselves)."""
    eigs = np.linalg.eigvals(drift)
    return bool(np.all(eigs.real < 0.0)), eigs


def amplitude_sweep(params, drive_grid, omega_eval, noise=None):
    """E(omega_eval) along an ascending drive sweep with branch continuation.

    Each cavity's intensity is continued adiabatically from the previous
    drive point; vanishing branches produce recorded jump events.  Points
    whose working branch is unstable (or numerically degenerate) come back
    flagged with e_degree = nan rather than aborting the sweep.
    """
    drive_grid = np.asarray(drive_grid, dtype=float)
    if drive_grid.size and np.any(np.diff(drive_grid) < 0):
        raise ValueError("drive_grid must be sorted ascending")
    if noise is None:
        noise = build_noise(params)
    rows = []
    previous = None
    for drive in drive_grid:
        branch = steady_state(params, drive, selection="follow", previous=previous)
        previous = branch
        drift = build_drift(params, branch)
        stable, _ = classify_stability(drift)
        e_degree = np.nan
        error = None
        if stable:
            try:
                e_degree = epr_spectra(drift, noise, omega_eval).e_degree
            except (SingularTransferError, ArithmeticError) as exc:
                error = str(exc)
        else:
            error = "unstable working point"
        rows.append(SweepPoint(
            drive=float(drive),
            branch1=branch.branch1, branch2=branch.branch2,
            intensity1=branch.intensity1, intensity2=branch.intensity2,
            stable=stable, e_degree=float(e_degree),
            jumped=branch.jumped1 or branch.jumped2,
            error=error,
        ))
    return rows
