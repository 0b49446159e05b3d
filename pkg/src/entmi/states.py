"""Exact per-state observables for two-qubit pure states.

A pure state is held as four complex amplitudes (a, b, c, d) over the
product basis |00>, |01>, |10>, |11>, normalized so the squared moduli
sum to 1.  Measuring both qubits in that basis yields the classical
outcome distribution (|a|^2, |b|^2, |c|^2, |d|^2); the information
quantities below (total/marginal Shannon entropies, mutual information)
are computed from it in bits.  Concurrence 2|ad - bc| and the von Neumann
entropy of either reduced qubit quantify the quantum correlation.

All observable functions accept either a :class:`TwoQubitState` or a
plain array whose last axis holds the four amplitudes, so large batches
can be processed without per-state objects.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConsistencyError, DomainError, NotNormalizedError, ZeroVectorError

# |sum of squared moduli - 1| must stay below this for a valid state.
NORM_TOL = 1e-12

# Mutual information may round to a tiny negative; anything below this
# indicates a real bug rather than round-off.
_MI_ROUNDOFF_TOL = 1e-12

# Concurrence may exceed 1 by round-off only within this margin.
_UNIT_CLAMP_TOL = 1e-12


def xlog2(v):
    """Elementwise ``v * log2(v)`` with the convention 0 log 0 = 0."""
    v = np.asarray(v, dtype=np.float64)
    safe = np.where(v > 0.0, v, 1.0)
    return safe * np.log2(safe)


def binary_entropy(p):
    """Base-2 entropy of a two-outcome distribution (p, 1-p)."""
    p = np.asarray(p, dtype=np.float64)
    return _scalarize(np.maximum(-xlog2(p) - xlog2(1.0 - p), 0.0))


def _scalarize(x):
    return float(x) if np.ndim(x) == 0 else x


def _check_finite(values, what="amplitudes"):
    if not np.all(np.isfinite(values)):
        raise ValueError(f"{what} must be finite (no NaN/Inf)")


@dataclass(frozen=True)
class TwoQubitState:
    """Normalized pure state a|00> + b|01> + c|10> + d|11>."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        amps = np.array([self.a, self.b, self.c, self.d], dtype=np.complex128)
        _check_finite(amps.view(np.float64))
        norm2 = float(np.sum(amps.real**2 + amps.imag**2))
        if norm2 < 1e-24:
            raise ZeroVectorError("state vector is numerically zero")
        if abs(norm2 - 1.0) > NORM_TOL:
            raise NotNormalizedError(
                f"squared amplitudes sum to {norm2!r}, not 1 within {NORM_TOL}"
            )

    @property
    def amplitudes(self) -> np.ndarray:
        """Amplitudes as a length-4 complex array (a, b, c, d)."""
        return np.array([self.a, self.b, self.c, self.d], dtype=np.complex128)


@dataclass(frozen=True)
class ParamState:
    """Angle parametrization of a real-amplitude state.

    Amplitudes are (A cos(alpha), A sin(alpha), B cos(beta), B sin(beta))
    with A = sqrt(y) and B = sqrt(1 - y), so the norm is 1 by construction.
    Angles are unrestricted; y must lie in [0, 1].
    """

    y: float
    alpha: float
    beta: float

    def __post_init__(self):
        _check_finite(np.array([self.y, self.alpha, self.beta]), "parameters")
        if not 0.0 <= self.y <= 1.0:
            raise DomainError(f"y={self.y!r} outside [0, 1]")


def make_state(a, b, c, d, normalize: bool = False) -> TwoQubitState:
    """Build a :class:`TwoQubitState` from four complex amplitudes.

    With ``normalize=True`` the amplitudes are rescaled to unit norm;
    otherwise they must already be normalized within ``NORM_TOL``.

    Raises ``ZeroVectorError`` if all amplitudes are numerically zero and
    ``NotNormalizedError`` if ``normalize`` is off and the norm is not 1.
    """
    amps = np.array([a, b, c, d], dtype=np.complex128)
    _check_finite(amps.view(np.float64))
    norm = float(np.sqrt(np.sum(amps.real**2 + amps.imag**2)))
    if norm < 1e-12:
        raise ZeroVectorError("cannot build a state from an all-zero vector")
    if normalize:
        amps = amps / norm
    return TwoQubitState(*(complex(x) for x in amps))


def params_to_amplitudes(y, alpha, beta) -> np.ndarray:
    """Vectorized amplitude construction for the angle parametrization.

    Broadcasts y, alpha, beta and returns real amplitudes stacked on the
    last axis.  y outside [0, 1] raises ``DomainError``.
    """
    y, alpha, beta = np.broadcast_arrays(
        np.asarray(y, dtype=np.float64),
        np.asarray(alpha, dtype=np.float64),
        np.asarray(beta, dtype=np.float64),
    )
    if np.any(y < 0.0) or np.any(y > 1.0):
        raise DomainError("y outside [0, 1]")
    big = np.sqrt(y)
    small = np.sqrt(1.0 - y)
    return np.stack(
        [
            big * np.cos(alpha),
            big * np.sin(alpha),
            small * np.cos(beta),
            small * np.sin(beta),
        ],
        axis=-1,
    )


def from_params(p: ParamState) -> TwoQubitState:
    """Scalar version of :func:`params_to_amplitudes` returning a state."""
    amps = params_to_amplitudes(p.y, p.alpha, p.beta)
    return TwoQubitState(*(complex(x) for x in amps))


def _amplitudes_of(state) -> np.ndarray:
    if isinstance(state, TwoQubitState):
        return state.amplitudes
    arr = np.asarray(state)
    if arr.ndim == 0 or arr.shape[-1] != 4:
        raise ValueError("expected four amplitudes on the last axis")
    return arr


def probabilities(state) -> np.ndarray:
    """Outcome distribution of a local product-basis measurement.

    Returns (|a|^2, |b|^2, |c|^2, |d|^2) on the last axis.
    """
    amps = _amplitudes_of(state)
    if np.iscomplexobj(amps):
        return amps.real**2 + amps.imag**2
    return np.asarray(amps, dtype=np.float64) ** 2


def total_entropy(probs):
    """Shannon entropy (bits) of the four-outcome distribution."""
    p = np.asarray(probs, dtype=np.float64)
    return _scalarize(np.maximum(-xlog2(p).sum(axis=-1), 0.0))


def marginal_entropies(probs):
    """Entropies (bits) of the left and right qubit outcome marginals.

    Left groups outcomes (1,2) vs (3,4); right groups (1,3) vs (2,4).
    """
    p = np.asarray(probs, dtype=np.float64)
    left = -xlog2(p[..., 0] + p[..., 1]) - xlog2(p[..., 2] + p[..., 3])
    right = -xlog2(p[..., 0] + p[..., 2]) - xlog2(p[..., 1] + p[..., 3])
    return _scalarize(np.maximum(left, 0.0)), _scalarize(np.maximum(right, 0.0))


def mutual_information(probs):
    """Mutual information (bits) between the two measured qubits.

    Computed as H_left + H_right - H_total.  Round-off can produce values
    a few ulp below zero; those are clamped to 0.  Anything below
    -1e-12 means the input was not a distribution and raises
    ``ConsistencyError``.
    """
    p = np.asarray(probs, dtype=np.float64)
    left = -xlog2(p[..., 0] + p[..., 1]) - xlog2(p[..., 2] + p[..., 3])
    right = -xlog2(p[..., 0] + p[..., 2]) - xlog2(p[..., 1] + p[..., 3])
    total = -xlog2(p).sum(axis=-1)
    info = left + right - total
    if np.min(info) < -_MI_ROUNDOFF_TOL:
        raise ConsistencyError(
            f"mutual information {np.min(info)!r} below -{_MI_ROUNDOFF_TOL}; "
            "input is not a probability distribution"
        )
    return _scalarize(np.maximum(info, 0.0))


def _clamp_unit(values, what):
    values = np.asarray(values, dtype=np.float64)
    if np.max(values, initial=0.0) > 1.0 + _UNIT_CLAMP_TOL:
        raise ConsistencyError(f"{what} {np.max(values)!r} exceeds 1 beyond round-off")
    return np.minimum(values, 1.0)


def concurrence(state):
    """Concurrence 2|ad - bc| of a pure state, in [0, 1]."""
    amps = _amplitudes_of(state)
    a, b, c, d = (amps[..., k] for k in range(4))
    value = 2.0 * np.abs(a * d - b * c)
    return _scalarize(_clamp_unit(value, "concurrence"))


def concurrence_polar(mod_a, mod_b, mod_c, mod_d, theta):
    """Concurrence from amplitude moduli and the combined phase.

    For amplitudes written in polar form, concurrence depends on the
    phases only through theta = theta_a + theta_d - theta_b - theta_c:

        2 * sqrt(|ad|^2 + |bc|^2 - 2 |abcd| cos(theta))

    The squared moduli must sum to 1 within ``NORM_TOL``.
    """
    mod_a, mod_b, mod_c, mod_d, theta = np.broadcast_arrays(
        *(np.asarray(x, dtype=np.float64) for x in (mod_a, mod_b, mod_c, mod_d, theta))
    )
    for moduli in (mod_a, mod_b, mod_c, mod_d):
        if np.any(moduli < 0.0):
            raise DomainError("moduli must be non-negative")
    norm2 = mod_a**2 + mod_b**2 + mod_c**2 + mod_d**2
    if np.max(np.abs(norm2 - 1.0)) > NORM_TOL:
        raise NotNormalizedError("squared moduli do not sum to 1 within tolerance")
    ad = mod_a * mod_d
    bc = mod_b * mod_c
    radicand = ad**2 + bc**2 - 2.0 * ad * bc * np.cos(theta)
    value = 2.0 * np.sqrt(np.maximum(radicand, 0.0))
    return _scalarize(_clamp_unit(value, "concurrence"))


def entanglement_from_concurrence(c):
    """Entanglement entropy (bits) as a function of concurrence.

    E(C) is the binary entropy of x = (1 + sqrt(1 - C^2)) / 2; it rises
    monotonically from E(0) = 0 to E(1) = 1.  The complement 1 - x is
    evaluated as C^2 / (2 (1 + sqrt(1 - C^2))) to avoid cancellation for
    small C.
    """
    c = np.asarray(c, dtype=np.float64)
    if np.any(c < -_UNIT_CLAMP_TOL) or np.any(c > 1.0 + _UNIT_CLAMP_TOL):
        raise DomainError("concurrence outside [0, 1]")
    c = np.clip(c, 0.0, 1.0)
    root = np.sqrt(1.0 - c * c)
    x = 0.5 * (1.0 + root)
    x_comp = c * c / (2.0 * (1.0 + root))
    return _scalarize(np.maximum(-xlog2(x) - xlog2(x_comp), 0.0))


def entanglement_entropy(state):
    """Entanglement entropy (bits) via the reduced density matrix.

    Traces out the right qubit, takes the two eigenvalues of the
    resulting 2x2 Hermitian matrix in closed form (trace/determinant
    quadratic, no iterative solver), and returns their base-2 entropy.
    The small eigenvalue is recovered as det/lambda_max so near-product
    states do not lose precision to cancellation.
    """
    amps = np.asarray(_amplitudes_of(state), dtype=np.complex128)
    a, b, c, d = (amps[..., k] for k in range(4))
    top = a.real**2 + a.imag**2 + b.real**2 + b.imag**2
    bottom = c.real**2 + c.imag**2 + d.real**2 + d.imag**2
    off = a * np.conj(c) + b * np.conj(d)
    det = np.maximum(top * bottom - (off.real**2 + off.imag**2), 0.0)
    half_trace = 0.5 * (top + bottom)
    lam_big = half_trace + np.sqrt(np.maximum(half_trace**2 - det, 0.0))
    lam_small = det / lam_big
    return _scalarize(np.maximum(-xlog2(lam_big) - xlog2(lam_small), 0.0))
