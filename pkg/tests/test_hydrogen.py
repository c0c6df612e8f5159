from fractions import Fraction

import pytest

from ncqm.exact import Coefficient, ExactValue
from ncqm.hydrogen import (
    InvalidQuantumNumbersError,
    PhysicalParams,
    QuantumNumbers,
    commutator_expectation,
    coulomb_residual,
    delta_E_closed_f1,
    delta_E_closed_fr,
    delta_E_from_reduction,
    delta_E_general,
    energy,
    hamiltonian_reduction_residual,
    laguerre_coefficients,
    printed_r2_formula,
    radial_expectation_exact,
    radial_expectation_quadrature,
    solid_harmonic,
    uncertainty_bound,
    uncertainty_product,
    wavefunction,
)
from ncqm.operators import angular_momentum
from ncqm.poisson import Measure
from ncqm.symfield import DivergentIntegralError, ScalarField, integrate_r3

P0 = PhysicalParams()
P1 = PhysicalParams(fspec=1)
UNIT = Measure.unit()


def states(nmax):
    for n in range(1, nmax + 1):
        for l in range(n):
            for m in range(-l, l + 1):
                yield QuantumNumbers(n, l, m)


def test_quantum_number_validation():
    for bad in ((0, 0, 0), (2, 2, 0), (2, 1, 2)):
        with pytest.raises(InvalidQuantumNumbersError):
            QuantumNumbers(*bad)
    with pytest.raises(ValueError):
        PhysicalParams(e2=0)


def test_energy_units():
    assert energy(2, P0) == Fraction(-1, 8)
    p = PhysicalParams(e2="1/137")
    assert p.a0 == 137
    assert energy(1, p) == -Fraction(1, 2 * 137 * 137)


def test_laguerre_recurrence():
    # L_2^{(1)}(t) = (t^2 - 6 t + 6)/2
    assert laguerre_coefficients(2, 1) == (3, -3, Fraction(1, 2))


def test_ground_state():
    st = wavefunction(QuantumNumbers(1, 0, 0), P0)
    assert st.psi == ScalarField.exponential(3, 1)
    assert st.scale * st.scale == ExactValue.basis(1, -2)
    assert st.norm_sq(UNIT) == ExactValue.rational(1)


def test_solid_harmonics_are_harmonic():
    for l in range(4):
        for m in range(-l, l + 1):
            S, _ = solid_harmonic(l, m)
            assert S.laplacian().is_zero()


@pytest.mark.parametrize("q", list(states(4)), ids=str)
def test_eigenstates(q):
    st = wavefunction(q, P0)
    assert st.norm_sq(UNIT) == ExactValue.rational(1)
    assert angular_momentum("sq", st.psi) == st.psi.scale(q.l * (q.l + 1))
    assert angular_momentum(2, st.psi) == st.psi.scale(q.m)
    assert coulomb_residual(q, P0).is_zero()


def test_radial_examples():
    assert radial_expectation_exact(QuantumNumbers(2, 1), -3, P0) == Fraction(1, 24)
    assert radial_expectation_exact(QuantumNumbers(2, 0), -1, P0) == Fraction(1, 4)
    assert radial_expectation_exact(QuantumNumbers(1, 0), 0, P0) == 1
    assert radial_expectation_quadrature(QuantumNumbers(2, 1), -3, P0) == pytest.approx(1 / 24, abs=1e-10)
    assert radial_expectation_quadrature(QuantumNumbers(1, 0), 2, P0) == pytest.approx(3.0, abs=1e-10)
    assert radial_expectation_quadrature(QuantumNumbers(1, 0), 0, P0) == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(DivergentIntegralError):
        radial_expectation_exact(QuantumNumbers(2, 0), -3, P0)
    with pytest.raises(DivergentIntegralError):
        radial_expectation_quadrature(QuantumNumbers(2, 0), -3, P0)


def test_radial_moments_match_3d_integral():
    q = QuantumNumbers(3, 1, 1)
    st = wavefunction(q, P0)
    dens = st.psi.conjugate() * st.psi * ScalarField.radial(3, 2)
    total = st.scale.conjugate() * st.scale * integrate_r3(dens)
    assert total == ExactValue.rational(radial_expectation_exact(q, 2, P0))


def test_oracle_with_physical_coupling():
    p = PhysicalParams(e2=0.0072973525693)
    q = QuantumNumbers(3, 2)
    exact = float(radial_expectation_exact(q, -3, p))
    assert radial_expectation_quadrature(q, -3, p) == pytest.approx(exact, rel=1e-10)


def test_level_shift_examples():
    q21 = QuantumNumbers(2, 1)
    assert delta_E_general(q21, P0) == Fraction(-1, 144)
    assert delta_E_general(QuantumNumbers(3, 0), P0) == 0
    assert delta_E_general(q21, P1) == Fraction(-1, 24)
    assert delta_E_closed_f1(q21, P0) == Fraction(-1, 144)
    assert delta_E_closed_f1(QuantumNumbers(3, 1), P0) == Fraction(-1, 486)
    assert delta_E_closed_f1(QuantumNumbers(3, 2), P0) / delta_E_closed_f1(QuantumNumbers(3, 1), P0) == Fraction(3, 5)
    assert delta_E_closed_fr(q21, P1) == Fraction(-1, 24)
    assert delta_E_closed_fr(QuantumNumbers(3, 2), P1) == Fraction(-1, 18)
    assert delta_E_closed_fr(QuantumNumbers(4, 0), P1) == 0
    with pytest.raises(ValueError):
        delta_E_closed_f1(QuantumNumbers(2, 0), P0)
    assert delta_E_closed_f1(QuantumNumbers(2, 0), P0, allow_l0=True) != 0


def test_consistency_triangle():
    for n in range(1, 11):
        for l in range(n):
            q = QuantumNumbers(n, l)
            if l:
                assert delta_E_closed_f1(q, P0) == delta_E_general(q, P0)
            assert delta_E_closed_fr(q, P1) == delta_E_general(q, P1)


def test_m_degeneracy_and_l_splitting():
    for p in (P0, P1):
        for n in (3, 4):
            shifts = [delta_E_general(QuantumNumbers(n, l, m), p) for l in range(n) for m in range(-l, l + 1)]
            by_l = {l: {delta_E_general(QuantumNumbers(n, l, m), p) for m in range(-l, l + 1)} for l in range(n)}
            assert all(len(v) == 1 for v in by_l.values())
            assert len(set(shifts)) > 1


def test_reduction_normalization():
    # the reduced Hamiltonian gives -1/2 times the quoted perturbation
    q = QuantumNumbers(2, 1)
    assert delta_E_from_reduction(q, P0) == -delta_E_general(q, P0) / 2


@pytest.mark.parametrize("s", [0, 1])
@pytest.mark.parametrize("l", [0, 1, 2])
def test_hamiltonian_reduction(s, l):
    assert hamiltonian_reduction_residual(s, l).is_zero()


def test_hamiltonian_reduction_other_m():
    assert hamiltonian_reduction_residual(1, 2, m=-1).is_zero()


def test_bound_examples():
    assert uncertainty_bound(QuantumNumbers(2, 1, 1), P0) == Fraction(1, 4)
    assert uncertainty_bound(QuantumNumbers(3, 2, 0), P1) == 0
    q = QuantumNumbers(2, 1, 1)
    assert uncertainty_bound(q, P1) == Fraction(1, 4) * 30
    assert printed_r2_formula(2, 1, 1) * Fraction(1, 4) == 5
    assert printed_r2_formula(1, 0, 1) == Fraction(5, 4)
    assert radial_expectation_exact(QuantumNumbers(1, 0), 2, P0) == 3


def test_uncertainty_product():
    assert uncertainty_product(QuantumNumbers(1, 0, 0), P0) == pytest.approx(1.0, abs=1e-12)
    theta2 = Fraction(1, 10 ** 4)
    for p in (P0, P1):
        for q in states(3):
            assert uncertainty_product(q, p) >= float(uncertainty_bound(q, p) * theta2)


@pytest.mark.parametrize("m,s", [(1, 0), (0, 0), (-1, 0), (1, 1)])
def test_commutator_expectation(m, s):
    p = PhysicalParams(fspec=s)
    q = QuantumNumbers(2, 1, m)
    ce = commutator_expectation(q, p)
    f2 = radial_expectation_exact(q, 2 * s, p)
    assert ce[1].is_zero()
    assert ce[2] == ExactValue.rational(Coefficient(0, Fraction(m, 2)) * f2)
