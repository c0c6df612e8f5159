"""Hydrogen sector: exact eigenstates, radial moments, NC level shifts and nonlocality bounds.

Natural units throughout; ``a0 = 1/e2`` and ``E_n = -e2 / (2 a0 n^2)``.  Level
shifts and bounds are returned as exact coefficients of ``theta^2``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.special import eval_genlaguerre, roots_laguerre

from .exact import Coefficient, ExactValue, as_fraction
from .operators import StateFunction, angular_momentum, commutator_xx, inner_product_graded
from .poisson import Measure, rotational_bivector
from .starprod import Graded, apply, lift, star_prime
from .symfield import DivergentIntegralError, ScalarField, integrate_r3

__all__ = [
    "QuantumNumbers",
    "PhysicalParams",
    "RadialFunction",
    "InvalidQuantumNumbersError",
    "QuadratureConvergenceError",
    "laguerre_coefficients",
    "solid_harmonic",
    "radial_function",
    "wavefunction",
    "energy",
    "radial_expectation_exact",
    "radial_expectation_quadrature",
    "delta_E_general",
    "delta_E_closed_f1",
    "delta_E_closed_fr",
    "hamiltonian_reduction_residual",
    "r2_derivative",
    "uncertainty_bound",
    "printed_r2_formula",
    "second_moments",
    "uncertainty_product",
    "commutator_expectation",
    "coulomb_residual",
    "delta_E_from_reduction",
]


class InvalidQuantumNumbersError(ValueError):
    pass


class QuadratureConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True, order=True)
class QuantumNumbers:
    n: int
    l: int
    m: int = 0

    def __post_init__(self):
        if self.n < 1 or not 0 <= self.l <= self.n - 1 or not -self.l <= self.m <= self.l:
            raise InvalidQuantumNumbersError(f"invalid (n, l, m) = ({self.n}, {self.l}, {self.m})")


@dataclass(frozen=True)
class PhysicalParams:
    e2: Fraction = Fraction(1)
    theta: float = 0.0
    fspec: int = 0

    def __post_init__(self):
        object.__setattr__(self, "e2", as_fraction(self.e2))
        if self.e2 <= 0:
            raise ValueError("e2 must be positive")
        if self.theta < 0:
            raise ValueError("theta must be non-negative")

    @property
    def a0(self) -> Fraction:
        return 1 / self.e2


def energy(n: int, p: PhysicalParams) -> Fraction:
    return -p.e2 / (2 * p.a0 * n * n)


@lru_cache(maxsize=None)
def laguerre_coefficients(k: int, alpha: int) -> tuple:
    """Power-series coefficients of the generalized Laguerre polynomial ``L_k^alpha``."""
    prev, cur = [Fraction(1)], [Fraction(1 + alpha), Fraction(-1)]
    if k == 0:
        return tuple(prev)
    for j in range(1, k):
        # (j+1) L_{j+1} = (2j+1+alpha-t) L_j - (j+alpha) L_{j-1}
        nxt = [Fraction(0)] * (j + 2)
        for d, c in enumerate(cur):
            nxt[d] += (2 * j + 1 + alpha) * c
            nxt[d + 1] -= c
        for d, c in enumerate(prev):
            nxt[d] -= (j + alpha) * c
        nxt = [c / (j + 1) for c in nxt]
        prev, cur = cur, nxt
    return tuple(cur)


def _legendre_derivative(l: int, m: int) -> dict:
    """``d^m/dt^m P_l(t)`` as ``{power: coeff}``."""
    out = {}
    for k in range(l // 2 + 1):
        p = l - 2 * k
        if p < m:
            continue
        c = Fraction((-1) ** k * math.comb(l, k) * math.comb(2 * l - 2 * k, l), 2 ** l)
        out[p - m] = c * Fraction(math.factorial(p), math.factorial(p - m))
    return out


def solid_harmonic(l: int, m: int) -> tuple[ScalarField, Fraction]:
    """``(S, c)`` with ``r^l Y_l^m = sqrt(c/pi) * S`` and ``S`` a harmonic polynomial.

    Condon-Shortley phase; ``L_3 S = m S``.
    """
    am = abs(m)
    x, y, z = ScalarField.coordinates(3)
    r2 = ScalarField.radial(3, 2)
    ladder = x + y.scale(Coefficient(0, 1 if m >= 0 else -1))
    poly = ScalarField.zero(3)
    for p, c in _legendre_derivative(l, am).items():
        # r^{l-m} t^p with p = l-m-2k gives z^p (r^2)^k
        k = (l - am - p) // 2
        poly = poly + (z ** p) * (r2 ** k) * c
    S = (ladder ** am) * poly
    if m > 0 and am % 2:
        S = -S
    c = Fraction(2 * l + 1, 4) * Fraction(math.factorial(l - am), math.factorial(l + am))
    return S, c


@dataclass(frozen=True)
class RadialFunction:
    """``R(r) = sqrt(norm_sq) * sum_p coeffs[p] r^p * exp(-gamma r)``."""

    coeffs: tuple  # ((power, Fraction), ...)
    gamma: Fraction
    norm_sq: Fraction

    def moment(self, k: int) -> Fraction:
        """``int_0^inf R^2 r^{2+k} dr``, exactly."""
        total = Fraction(0)
        two_g = 2 * self.gamma
        for p, a in self.coeffs:
            for q, b in self.coeffs:
                j = p + q + 2 + k
                if j < 0:
                    raise DivergentIntegralError(f"r^{k} moment diverges at the origin")
                total += a * b * Fraction(math.factorial(j)) / two_g ** (j + 1)
        return self.norm_sq * total


def radial_function(n: int, l: int, p: PhysicalParams) -> RadialFunction:
    QuantumNumbers(n, l, 0)
    a0 = p.a0
    u = Fraction(2) / (n * a0)  # argument scale: rho = u r
    lag = laguerre_coefficients(n - l - 1, 2 * l + 1)
    coeffs = tuple((l + d, c * u ** (l + d)) for d, c in enumerate(lag) if c)
    norm_sq = u ** 3 * Fraction(math.factorial(n - l - 1), 2 * n * math.factorial(n + l))
    return RadialFunction(coeffs, Fraction(1) / (n * a0), norm_sq)


def wavefunction(q: QuantumNumbers, p: PhysicalParams) -> StateFunction:
    """Normalised eigenstate as ``scale * psi`` with ``psi`` polynomial times ``exp(-r/(n a0))``."""
    n, l, m = q.n, q.l, q.m
    a0 = p.a0
    u = Fraction(2) / (n * a0)
    lag = laguerre_coefficients(n - l - 1, 2 * l + 1)
    radial_poly = ScalarField.zero(3)
    for d, c in enumerate(lag):
        if c:
            radial_poly = radial_poly + ScalarField.radial(3, d).scale(c * u ** d)
    S, ang_c = solid_harmonic(l, m)
    # R Y = N exp(-r/na0) u^l r^l L(u r) Y and r^l Y = sqrt(c/pi) S
    psi = (ScalarField.exponential(3, 1 / (n * a0)) * radial_poly * S).scale(u ** l)
    rad_norm = u ** 3 * Fraction(math.factorial(n - l - 1), 2 * n * math.factorial(n + l))
    scale = ExactValue.basis(rad_norm * ang_c, -2).sqrt()
    return StateFunction(psi, scale, (n, l, m))


def radial_expectation_exact(q: QuantumNumbers, k: int, p: PhysicalParams) -> Fraction:
    if k < -2 - 2 * q.l:
        raise DivergentIntegralError(f"<r^{k}> diverges for l={q.l}")
    return radial_function(q.n, q.l, p).moment(k)


def radial_expectation_quadrature(q: QuantumNumbers, k: int, p: PhysicalParams,
                                  start_nodes: int = 8, max_nodes: int = 1024,
                                  rtol: float = 1e-12) -> float:
    """Gauss-Laguerre estimate of ``<r^k>`` with node doubling; independent of the exact path."""
    n, l = q.n, q.l
    if k < -2 - 2 * l:
        raise DivergentIntegralError(f"<r^{k}> diverges for l={l}")
    a0 = float(p.a0)
    norm_sq = (2 / (n * a0)) ** 3 * math.factorial(n - l - 1) / (2 * n * math.factorial(n + l))
    pref = norm_sq * (n * a0 / 2) ** (3 + k)

    def estimate(nodes):
        t, w = roots_laguerre(nodes)
        lag = eval_genlaguerre(n - l - 1, 2 * l + 1, t)
        return pref * float(np.sum(w * t ** (2 + k + 2 * l) * lag * lag))

    nodes = start_nodes
    prev = estimate(nodes)
    while nodes < max_nodes:
        nodes *= 2
        cur = estimate(nodes)
        if abs(cur - prev) <= rtol * abs(cur):
            return cur
        prev = cur
    raise QuadratureConvergenceError(f"no convergence for {q}, k={k} with {max_nodes} nodes")


def delta_E_general(q: QuantumNumbers, p: PhysicalParams) -> Fraction:
    """``-(e2 l(l+1)/12) <f^2/r^3>`` as a theta^2 coefficient; 0 for s-states."""
    if q.l == 0:
        return Fraction(0)
    moment = radial_expectation_exact(q, 2 * p.fspec - 3, p)
    return -p.e2 * q.l * (q.l + 1) / 12 * moment


def delta_E_closed_f1(q: QuantumNumbers, p: PhysicalParams, allow_l0: bool = False) -> Fraction:
    """``-(E_n^2/(3 a0 e2)) n/(l+1/2)``; s-states must be requested explicitly."""
    if q.l == 0 and not allow_l0:
        raise ValueError("closed form for f=1 is not derived for l=0")
    En = energy(q.n, p)
    return -En * En / (3 * p.a0 * p.e2) * q.n / (q.l + Fraction(1, 2))


def delta_E_closed_fr(q: QuantumNumbers, p: PhysicalParams) -> Fraction:
    """``(1/6) E_n l(l+1)``."""
    return energy(q.n, p) * q.l * (q.l + 1) / 6


def r2_derivative(V: ScalarField) -> ScalarField:
    """``dV/d(r^2)`` for a radial ``V``, computed as ``(x . grad V)/(2 r^2)``."""
    x = ScalarField.coordinates(V.dim)
    euler = sum((x[i] * V.partial(i) for i in range(V.dim)), ScalarField.zero(V.dim))
    return (euler * ScalarField.radial(V.dim, -2)).scale(Fraction(1, 2))


def hamiltonian_reduction_residual(s: int, l: int, V: ScalarField | None = None, m: int = 0,
                                   envelope: ScalarField | None = None) -> Graded:
    """Grades of ``V *' psi - V psi - (theta^2/12) V' f^2 l(l+1) psi`` for ``psi = g(r) r^l Y_l^m``."""
    if V is None:
        V = ScalarField.radial(3, -1)
    if envelope is None:
        envelope = ScalarField.exponential(3, 1)
    S, _ = solid_harmonic(l, m)
    psi = envelope * S
    w = rotational_bivector(s)
    B = star_prime(w, Measure.unit())
    prod = apply(B, V, psi)
    f2 = ScalarField.radial(3, 2 * s)
    target = (r2_derivative(V) * f2 * psi).scale(Fraction(l * (l + 1), 12))
    return Graded((prod[0] - V * psi, prod[1], prod[2] - target))


def uncertainty_bound(q: QuantumNumbers, p: PhysicalParams) -> Fraction:
    """theta^2 coefficient of ``(1/4)|m <f^2>|``."""
    if q.m == 0:
        return Fraction(0)
    return Fraction(abs(q.m), 4) * radial_expectation_exact(q, 2 * p.fspec, p)


def printed_r2_formula(n: int, l: int, a0) -> Fraction:
    """``(n^2 a0^2/4)(4n^2 - l^2 + 2nl + 1)``, kept for comparison only."""
    a0 = as_fraction(a0)
    return Fraction(n * n) * a0 * a0 / 4 * (4 * n * n - l * l + 2 * n * l + 1)


def second_moments(q: QuantumNumbers, p: PhysicalParams) -> dict:
    """Exact ``<x>, <y>, <x^2>, <y^2>`` from the 3D wavefunction."""
    st = wavefunction(q, p)
    dens = st.psi.conjugate() * st.psi
    w2 = st.scale.conjugate() * st.scale
    x, y, _ = ScalarField.coordinates(3)
    return {
        "x": w2 * integrate_r3(dens * x),
        "y": w2 * integrate_r3(dens * y),
        "x2": w2 * integrate_r3(dens * x * x),
        "y2": w2 * integrate_r3(dens * y * y),
    }


def uncertainty_product(q: QuantumNumbers, p: PhysicalParams) -> float:
    mom = second_moments(q, p)
    dx2 = float(mom["x2"]) - float(mom["x"]) ** 2
    dy2 = float(mom["y2"]) - float(mom["y"]) ** 2
    return math.sqrt(dx2 * dy2)


def commutator_expectation(q: QuantumNumbers, p: PhysicalParams, axes=(0, 1)) -> Graded:
    """Per-grade ``<psi|[x^1, x^2] psi>`` on the unperturbed state."""
    st = wavefunction(q, p)
    w = rotational_bivector(p.fspec)
    m = Measure.unit()
    B = star_prime(w, m)
    comm = commutator_xx(axes[0], axes[1], w, m, st.psi)
    scale = st.scale.conjugate() * st.scale
    return inner_product_graded(lift(st.psi), comm, B, m, scale)


def coulomb_residual(q: QuantumNumbers, p: PhysicalParams) -> ScalarField:
    """``(-1/2 Laplacian - e2/r - E_n) psi`` on the polynomial part (scale dropped)."""
    psi = wavefunction(q, p).psi
    E = energy(q.n, p)
    return psi.laplacian().scale(Fraction(-1, 2)) - (ScalarField.radial(3, -1) * psi).scale(p.e2) - psi.scale(E)


def delta_E_from_reduction(q: QuantumNumbers, p: PhysicalParams) -> Fraction:
    """theta^2 coefficient of ``<(1/12) V' f^2 L^2>`` for ``V = -e2/r`` (``V' = dV/d(r^2)``).

    Reported beside ``delta_E_general``; the two differ by a factor of -2.
    """
    if q.l == 0:
        return Fraction(0)
    return p.e2 * q.l * (q.l + 1) / 24 * radial_expectation_exact(q, 2 * p.fspec - 3, p)
