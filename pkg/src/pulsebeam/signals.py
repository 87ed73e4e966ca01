"""Driving signals and their analytic continuations to complex time.

A real driving signal g0(t) extends to an analytic signal

    g(tau) = (1/(2 pi i)) integral g0(t') / (tau - t') dt',   tau = t - i s,

holomorphic off the support of g0; the lower half-plane (s > 0) carries
the positive-frequency content and the upper half-plane the negative-
frequency content.  Equivalently, with the transform convention

    ghat0(w) = integral g0(t) exp(+i w t) dt,

the same function is recovered from a one-sided spectral integral

    g(t - i s) = (Sgn s / (2 pi)) integral Theta(w s) exp(-i w (t - i s)) ghat0(w) dw,

which this module evaluates as an independent second route.  The two
routes agree identically on the Cauchy kernel (g0 = delta), which fixes
both the transform convention and the overall sign.

Three signal families are provided: derivatives of the delta impulse
(closed form), Gaussian pulses, and sampled waveforms with linear
interpolation between samples and zero outside.  Quadratures are adaptive
Gauss-Kronrod on the (truncated) support, run well below the requested
target so the achieved estimate can be checked against it.
"""

from __future__ import annotations

import bisect
import cmath
import csv
import math
import warnings
from dataclasses import dataclass
from typing import Sequence, Tuple

from scipy.integrate import IntegrationWarning, quad

from .errors import (
    AccuracyError,
    DomainError,
    NonAnalyticPointError,
    ValidationError,
)
from .spacetime import as_scalar

# Fraction of the peak below which a signal is treated as numerically zero
# when truncating quadrature supports.
SUPPORT_FLOOR = 1e-14

# Default accuracy target (relative) for the quadrature-backed evaluations.
DEFAULT_REL_TOL = 1e-9

# Geometric epsilon ladder (ratio 2) for boundary-jump extrapolations.
DEFAULT_EPS_LADDER = (0.1, 0.05, 0.025, 0.0125, 0.00625, 0.003125)

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class ComplexTime:
    """Complex time argument tau = t - i s."""

    t: float
    s: float

    def __post_init__(self):
        object.__setattr__(self, "t", as_scalar(self.t, "time"))
        object.__setattr__(self, "s", as_scalar(self.s, "imaginary time"))

    @property
    def value(self) -> complex:
        return complex(self.t, -self.s)


class DrivingSignal:
    """Base class of the admissible driving-signal variants."""

    def amplitude_at(self, t: float) -> float:
        """Pointwise value g0(t)."""
        raise NotImplementedError

    def effective_support(self) -> Tuple[float, float]:
        """Interval outside which the signal is (numerically) zero."""
        raise NotImplementedError

    def peak_scale(self) -> float:
        """Magnitude scale of the signal, used for error thresholds."""
        raise NotImplementedError

    def is_continuous_at(self, t: float) -> bool:
        raise NotImplementedError


@dataclass(frozen=True)
class DeltaDerivative(DrivingSignal):
    """The distribution d^n/dt^n of a unit impulse at t = 0."""

    order: int = 0

    def __post_init__(self):
        if not isinstance(self.order, int) or self.order < 0:
            raise ValidationError(f"impulse-derivative order must be an integer >= 0, got {self.order}")

    def amplitude_at(self, t: float) -> float:
        if float(t) == 0.0:
            raise DomainError("an impulse derivative has no pointwise value at t = 0")
        return 0.0

    def effective_support(self) -> Tuple[float, float]:
        return (0.0, 0.0)

    def peak_scale(self) -> float:
        return 1.0

    def is_continuous_at(self, t: float) -> bool:
        return float(t) != 0.0


@dataclass(frozen=True)
class GaussianPulse(DrivingSignal):
    """g0(t) = amplitude * exp(-(t - center)^2 / (2 width^2))."""

    center: float = 0.0
    width: float = 1.0
    amplitude: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "center", as_scalar(self.center, "pulse center"))
        object.__setattr__(self, "width", as_scalar(self.width, "pulse width"))
        object.__setattr__(self, "amplitude", as_scalar(self.amplitude, "pulse amplitude"))
        if self.width <= 0.0:
            raise ValidationError(f"pulse width must be positive, got {self.width}")

    def amplitude_at(self, t: float) -> float:
        u = (float(t) - self.center) / self.width
        return self.amplitude * math.exp(-0.5 * u * u)

    def effective_support(self) -> Tuple[float, float]:
        half = self.width * math.sqrt(-2.0 * math.log(SUPPORT_FLOOR))
        return (self.center - half, self.center + half)

    def peak_scale(self) -> float:
        return abs(self.amplitude)

    def is_continuous_at(self, t: float) -> bool:
        return True


@dataclass(frozen=True)
class SampledSignal(DrivingSignal):
    """Piecewise-linear interpolation of samples, zero outside the sampled range."""

    times: Tuple[float, ...]
    values: Tuple[float, ...]

    def __post_init__(self):
        times = tuple(as_scalar(t, "sample time") for t in self.times)
        values = tuple(as_scalar(v, "sample value") for v in self.values)
        if len(times) != len(values):
            raise ValidationError(
                f"sample times and values must have equal length, got {len(times)} and {len(values)}"
            )
        if len(times) < 2:
            raise ValidationError("a sampled signal needs at least 2 samples")
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValidationError("sample times must be strictly increasing")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_csv(cls, path) -> "SampledSignal":
        """Load from a two-column CSV (time,value); an optional header row is skipped."""
        times, values = [], []
        with open(path, newline="") as handle:
            for row_index, row in enumerate(csv.reader(handle)):
                if not row:
                    continue
                if len(row) != 2:
                    raise ValidationError(
                        f"{path}: row {row_index + 1} must have exactly 2 columns, got {len(row)}"
                    )
                try:
                    t, v = float(row[0]), float(row[1])
                except ValueError:
                    if row_index == 0:
                        continue  # header row
                    raise ValidationError(
                        f"{path}: row {row_index + 1} is not numeric: {row!r}"
                    ) from None
                times.append(t)
                values.append(v)
        return cls(tuple(times), tuple(values))

    def amplitude_at(self, t: float) -> float:
        t = float(t)
        if t < self.times[0] or t > self.times[-1]:
            return 0.0
        k = bisect.bisect_right(self.times, t) - 1
        if k >= len(self.times) - 1:
            return self.values[-1]
        t0, t1 = self.times[k], self.times[k + 1]
        v0, v1 = self.values[k], self.values[k + 1]
        return v0 + (v1 - v0) * (t - t0) / (t1 - t0)

    def effective_support(self) -> Tuple[float, float]:
        return (self.times[0], self.times[-1])

    def peak_scale(self) -> float:
        return max(abs(v) for v in self.values)

    def is_continuous_at(self, t: float) -> bool:
        t = float(t)
        if t == self.times[0]:
            return self.values[0] == 0.0
        if t == self.times[-1]:
            return self.values[-1] == 0.0
        return True


# ---------------------------------------------------------------------------
# transform
# ---------------------------------------------------------------------------


def _phase_integrals(u: float) -> Tuple[complex, complex]:
    """int_0^1 exp(i u xi) dxi and int_0^1 xi exp(i u xi) dxi, stable for small u."""
    if abs(u) < 1e-3:
        iu = 1j * u
        e1 = 1.0 + iu / 2.0 + iu**2 / 6.0 + iu**3 / 24.0 + iu**4 / 120.0
        e2 = 0.5 + iu / 3.0 + iu**2 / 8.0 + iu**3 / 30.0 + iu**4 / 144.0
        return e1, e2
    iu = 1j * u
    eiu = cmath.exp(iu)
    e1 = (eiu - 1.0) / iu
    e2 = eiu / iu - (eiu - 1.0) / (iu * iu)
    return e1, e2


def fourier_transform(signal: DrivingSignal, omega: float) -> complex:
    """ghat0(omega) = integral g0(t) exp(+i omega t) dt.

    Closed forms for all three signal families; sampled signals use the
    exact transform of their piecewise-linear interpolant.
    """
    omega = as_scalar(omega, "angular frequency")
    if isinstance(signal, DeltaDerivative):
        return (-1j * omega) ** signal.order
    if isinstance(signal, GaussianPulse):
        sig = signal.width
        return (
            signal.amplitude
            * sig
            * math.sqrt(_TWO_PI)
            * cmath.exp(complex(-0.5 * sig * sig * omega * omega, omega * signal.center))
        )
    if isinstance(signal, SampledSignal):
        total = 0j
        for k in range(len(signal.times) - 1):
            t0, t1 = signal.times[k], signal.times[k + 1]
            v0, v1 = signal.values[k], signal.values[k + 1]
            length = t1 - t0
            e1, e2 = _phase_integrals(omega * length)
            total += cmath.exp(1j * omega * t0) * length * (v0 * e1 + (v1 - v0) * e2)
        return total
    raise ValidationError(f"unsupported signal type {type(signal).__name__}")


# ---------------------------------------------------------------------------
# quadrature helpers
# ---------------------------------------------------------------------------


def _quad_complex(func, lo: float, hi: float, limit: int = 200):
    """Adaptive quadrature of a complex integrand; returns (value, error estimate)."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        re, re_err = quad(
            lambda u: func(u).real, lo, hi, epsabs=1e-15, epsrel=1e-12, limit=limit
        )
        im, im_err = quad(
            lambda u: func(u).imag, lo, hi, epsabs=1e-15, epsrel=1e-12, limit=limit
        )
    return complex(re, im), re_err + im_err


def _check_accuracy(value: complex, estimate: float, rel_tol: float, scale: float, what: str) -> complex:
    if estimate > rel_tol * abs(value) and estimate > 1e-12 * scale:
        raise AccuracyError(
            f"{what} did not converge to the relative target {rel_tol:g}: "
            f"achieved estimate {estimate:.3e} for value {value!r}",
            value=value,
            estimate=estimate,
        )
    return value


# ---------------------------------------------------------------------------
# analytic signal (time-domain route)
# ---------------------------------------------------------------------------


def analytic_signal(signal: DrivingSignal, tau, rel_tol: float = DEFAULT_REL_TOL) -> complex:
    """Analytic signal g(tau) of a driving signal at complex time tau.

    tau may be a ComplexTime or a plain complex number t - i s.  Impulse
    derivatives use the closed form (-1)^n n! / (2 pi i tau^(n+1)); the
    other families are integrated adaptively over their truncated support,
    split at the real part of tau.  A real tau is accepted only where the
    signal vanishes, i.e. where the two boundary values coincide.
    """
    z = tau.value if isinstance(tau, ComplexTime) else complex(tau)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValidationError(f"complex time must be finite, got {z}")

    if isinstance(signal, DeltaDerivative):
        if z == 0:
            raise NonAnalyticPointError(
                "the analytic signal of an impulse derivative is singular at tau = 0"
            )
        n = signal.order
        return (-1.0) ** n * math.factorial(n) / (2j * math.pi * z ** (n + 1))

    lo, hi = signal.effective_support()
    if z.imag == 0.0 and lo <= z.real <= hi:
        raise NonAnalyticPointError(
            "analytic signal requested on the real axis inside the signal support "
            f"[{lo:g}, {hi:g}]; it is defined there only as a pair of boundary values"
        )

    def integrand(tp: float) -> complex:
        return signal.amplitude_at(tp) / (z - tp)

    if isinstance(signal, SampledSignal):
        nodes = list(signal.times)
    else:
        nodes = [lo, hi]
    # Splitting each panel at the projection of tau keeps the adaptive
    # scheme sharp when tau sits close to the real axis.
    cut = z.real
    total = 0j
    est = 0.0
    for seg_lo, seg_hi in zip(nodes, nodes[1:]):
        if seg_lo < cut < seg_hi:
            panels = ((seg_lo, cut), (cut, seg_hi))
        else:
            panels = ((seg_lo, seg_hi),)
        for a, b in panels:
            val, err = _quad_complex(integrand, a, b)
            total += val
            est += err
    value = total / (2j * math.pi)
    return _check_accuracy(
        value, est / _TWO_PI, rel_tol, signal.peak_scale(), "analytic-signal quadrature"
    )


# ---------------------------------------------------------------------------
# spectral route
# ---------------------------------------------------------------------------


def _spectral_upper_limit(signal: DrivingSignal, damping: float) -> float:
    """Frequency beyond which exp(-w*damping) * ghat0(w) is negligible."""
    upper = 45.0 / damping
    if isinstance(signal, DeltaDerivative) and signal.order > 0:
        n = signal.order
        for _ in range(4):
            upper = (45.0 + n * math.log(max(upper, 1.0))) / damping
    if isinstance(signal, GaussianPulse):
        # ghat0 itself decays like exp(-(width*w)^2/2).
        upper = min(upper, math.sqrt(2.0 * math.log(1e18)) / signal.width)
    return upper


def spectral_signal(
    signal: DrivingSignal, t: float, s: float, rel_tol: float = DEFAULT_REL_TOL
) -> complex:
    """Analytic signal via the one-sided spectral integral; requires s != 0.

    For s > 0 only positive frequencies contribute and the factor
    exp(-w s) makes the integral absolutely convergent; for s < 0 the
    negative-frequency half contributes.  Agrees with the quadrature route
    wherever both are defined.
    """
    t = as_scalar(t, "time")
    s = as_scalar(s, "imaginary time")
    if s == 0.0:
        raise DomainError("the spectral route needs s != 0; the real axis is a boundary")

    damping = abs(s)
    upper = _spectral_upper_limit(signal, damping)
    if s > 0.0:

        def integrand(w: float) -> complex:
            return cmath.exp(complex(-w * s, -w * t)) * fourier_transform(signal, w)

        prefactor = 1.0 / _TWO_PI
    else:

        def integrand(w: float) -> complex:
            return cmath.exp(complex(w * s, w * t)) * fourier_transform(signal, -w)

        prefactor = -1.0 / _TWO_PI

    value, est = _quad_complex(integrand, 0.0, upper, limit=800)
    scale = abs(fourier_transform(signal, min(1.0 / damping, upper))) / (_TWO_PI * damping)
    return _check_accuracy(
        prefactor * value, est / _TWO_PI, rel_tol, scale, "spectral-signal quadrature"
    )


# ---------------------------------------------------------------------------
# boundary jumps
# ---------------------------------------------------------------------------


def validate_eps_ladder(eps_list: Sequence[float], minimum: int = 3) -> Tuple[float, ...]:
    eps = tuple(as_scalar(e, "epsilon") for e in eps_list)
    if len(eps) < minimum:
        raise ValidationError(f"epsilon ladder needs at least {minimum} entries, got {len(eps)}")
    if any(e <= 0.0 for e in eps):
        raise ValidationError("epsilon ladder entries must be positive")
    if any(b >= a for a, b in zip(eps, eps[1:])):
        raise ValidationError("epsilon ladder must be strictly descending")
    return eps


def richardson_limit(eps_list: Sequence[float], values: Sequence[complex]):
    """Extrapolate samples f(eps) to eps -> 0+ by iterated Richardson steps.

    Neville's scheme on the nodes eps_list, evaluated at zero; on a
    geometric ladder this is the classic repeated two-term elimination of
    the leading O(eps) error.  Returns (limit, error_estimate) where the
    estimate is the difference of the last two extrapolation stages.
    """
    eps = [float(e) for e in eps_list]
    table = [complex(v) for v in values]
    if len(eps) != len(table):
        raise ValidationError("epsilon ladder and sample list must have equal length")
    n = len(table)
    best = table[0]
    prev = None
    for k in range(1, n):
        for i in range(n - k):
            ratio = eps[i + k] / (eps[i] - eps[i + k])
            table[i] = table[i + 1] + (table[i + 1] - table[i]) * ratio
        prev, best = best, table[0]
    estimate = abs(best - prev) if prev is not None else abs(best)
    return best, estimate


def jump_of_signal(
    signal: DrivingSignal, t: float, eps_list: Sequence[float] = DEFAULT_EPS_LADDER
) -> float:
    """Boundary-value jump g(t - i 0+) - g(t + i 0+), extrapolated over eps_list.

    For a signal continuous at t the jump recovers g0(t) itself.  The
    extrapolation must converge and yield a (numerically) real value;
    otherwise an AccuracyError carrying the best estimate is raised.
    """
    t = as_scalar(t, "time")
    eps = validate_eps_ladder(eps_list)
    if not signal.is_continuous_at(t):
        raise NonAnalyticPointError(f"driving signal is not continuous at t = {t:g}")
    samples = [
        analytic_signal(signal, complex(t, -e)) - analytic_signal(signal, complex(t, +e))
        for e in eps
    ]
    limit, est = richardson_limit(eps, samples)
    scale = max(signal.peak_scale(), 1e-30)
    if est + abs(limit.imag) > 1e-6 * abs(limit) + 1e-9 * scale:
        raise AccuracyError(
            "boundary-jump extrapolation did not converge: "
            f"estimate {est:.3e}, residual imaginary part {limit.imag:.3e}",
            value=limit,
            estimate=est + abs(limit.imag),
        )
    return limit.real
