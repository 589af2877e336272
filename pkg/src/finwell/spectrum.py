"""Even-parity bound states of the 1D finite potential well.

The well is flat inside |x| < a and has height V0 outside.  With the
dimensionless strength n = a*sqrt(2*m*V0)/hbar, even-parity levels are the
roots of

    xi * tan(xi) = sqrt(n^2 - xi^2),        0 < xi < n,

one root per branch k in the interval (k*pi, k*pi + pi/2).  The energy of a
level is E = (xi/n)^2 * V0.  Branch 0 exists for every n > 0; the original
analysis uses only that ground branch, higher branches are an engineering
extension.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConvergenceFailure, DomainError, NoSuchBranch
from .units import CONSTANTS, HYDROGEN_DEPTH, HYDROGEN_HALF_WIDTH, HYDROGEN_MASS

ROOT_RTOL = 1e-12  # residual tolerance, scaled by max(1, n)
_MAX_ITER = 200


@dataclass(frozen=True)
class WellConfig:
    """Physical description of the well, all SI."""

    half_width: float  # a [m]
    depth: float       # V0 [J]
    mass: float        # [kg]

    def __post_init__(self) -> None:
        for name, value in (
            ("half_width", self.half_width),
            ("depth", self.depth),
            ("mass", self.mass),
        ):
            if not math.isfinite(value) or value <= 0.0:
                raise DomainError(f"{name} must be positive and finite, got {value}")


@dataclass(frozen=True)
class WellStrength:
    """Dimensionless strength n and the natural length scale K = hbar/sqrt(2mV0)."""

    strength: float            # n
    characteristic_length: float  # K [m]


@dataclass(frozen=True)
class BoundState:
    """One solved even-parity level.

    xi is the interior phase alpha*a, eta the exterior decay phase beta*a;
    alpha [1/m] is the interior wavenumber and beta [1/m] the exterior decay
    constant.  xi^2 + eta^2 = n^2 and E = (xi/n)^2 * V0.
    """

    branch: int
    xi: float
    eta: float
    alpha: float   # [1/m]
    beta: float    # [1/m]
    energy: float  # [J]


def well_strength(cfg: WellConfig) -> WellStrength:
    """Strength n = a*sqrt(2mV0)/hbar and length scale K = hbar/sqrt(2mV0)."""
    momentum = math.sqrt(2.0 * cfg.mass * cfg.depth)  # sqrt(2mV0) [kg m/s]
    return WellStrength(
        strength=cfg.half_width * momentum / CONSTANTS.hbar,
        characteristic_length=CONSTANTS.hbar / momentum,
    )


def _branch_bracket(n: float, branch: int) -> tuple[float, float]:
    lo = branch * math.pi
    hi = min(lo + 0.5 * math.pi, n)
    if hi <= lo:
        raise NoSuchBranch(
            f"branch {branch} needs strength n > {lo:.6g}, got n = {n:.6g}"
        )
    return lo, hi


def _stable_residual(xi: float, n: float) -> float:
    # cos(xi) * (xi*tan(xi) - sqrt(n^2 - xi^2)): same roots, no tan pole.
    return xi * math.sin(xi) - math.cos(xi) * math.sqrt(max(n * n - xi * xi, 0.0))


def solve_even_root(n: float, branch: int = 0) -> float:
    """Root xi of the even-parity condition on the given branch.

    Bracketed bisection with a safeguarded secant step, applied to the
    pole-free form xi*sin(xi) - cos(xi)*sqrt(n^2 - xi^2).  The bracket
    (k*pi, min(k*pi + pi/2, n)) contains exactly one root, at which the
    residual changes sign monotonically.
    """
    if not math.isfinite(n) or n <= 0.0:
        raise DomainError(f"strength n must be positive, got {n}")
    if branch < 0:
        raise DomainError(f"branch must be non-negative, got {branch}")
    lo, hi = _branch_bracket(n, branch)

    f_lo = _stable_residual(lo, n)
    f_hi = _stable_residual(hi, n)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi

    x0, f0 = lo, f_lo
    x1, f1 = hi, f_hi
    root = 0.5 * (lo + hi)
    for _ in range(_MAX_ITER):
        # Secant proposal from the two most recent points, guarded to stay
        # strictly inside the current bracket; otherwise bisect.
        if f1 != f0:
            candidate = x1 - f1 * (x1 - x0) / (f1 - f0)
        else:
            candidate = 0.5 * (lo + hi)
        if not lo < candidate < hi:
            candidate = 0.5 * (lo + hi)
        f_cand = _stable_residual(candidate, n)
        x0, f0 = x1, f1
        x1, f1 = candidate, f_cand
        root = candidate
        if f_cand == 0.0:
            break
        if (f_cand > 0.0) == (f_hi > 0.0):
            hi, f_hi = candidate, f_cand
        else:
            lo, f_lo = candidate, f_cand
        if hi - lo <= 4.0 * math.ulp(hi):
            root = lo if abs(f_lo) < abs(f_hi) else hi
            break

    residual = root * math.tan(root) - math.sqrt(max(n * n - root * root, 0.0))
    if abs(residual) > ROOT_RTOL * max(1.0, n):
        raise ConvergenceFailure(
            f"root residual {residual:.3e} exceeds tolerance for n={n}, branch={branch}"
        )
    return root


def energy_ratio(n: float, branch: int = 0) -> float:
    """E/V0 for the given strength and branch."""
    xi = solve_even_root(n, branch)
    return (xi / n) ** 2


def energy_exact(cfg: WellConfig, branch: int = 0) -> BoundState:
    """Fully solved bound state for a physical well configuration."""
    strength = well_strength(cfg)
    n = strength.strength
    xi = solve_even_root(n, branch)
    eta = math.sqrt(max(n * n - xi * xi, 0.0))
    a = cfg.half_width
    return BoundState(
        branch=branch,
        xi=xi,
        eta=eta,
        alpha=xi / a,
        beta=eta / a,
        energy=(xi / n) ** 2 * cfg.depth,
    )


def hydrogen_well() -> WellConfig:
    """Hydrogen-like preset: depth 13.6058 eV, half-width the Bohr radius, electron mass."""
    return WellConfig(
        half_width=HYDROGEN_HALF_WIDTH.value,
        depth=HYDROGEN_DEPTH.value,
        mass=HYDROGEN_MASS.value,
    )
