"""Coordinate and momentum operators, the inner product, and commutator checks."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .exact import Coefficient, ExactValue
from .poisson import Bivector, Measure, drift_tensor, gauge_tensor_b, levi_civita, log_gradient
from .starprod import MAX_GRADE, BidiffOperator, Graded, apply_graded, lift, trace
from .symfield import ScalarField

__all__ = [
    "DiffOperator",
    "OperatorExpansion",
    "StateFunction",
    "NonPositiveMeasureError",
    "xhat",
    "phat",
    "naive_momentum",
    "angular_momentum",
    "angular_momentum_operator",
    "inner_product",
    "inner_product_graded",
    "adjointness_defect",
    "commutator_xx",
    "expected_commutator_xx",
    "commutator_xp",
    "expected_commutator_xp",
    "star_multiplication",
]

I = Coefficient(0, 1)
HALF_I = Coefficient(0, Fraction(1, 2))


class NonPositiveMeasureError(ValueError):
    pass


def _unit(dim, *axes):
    counts = [0] * dim
    for a in axes:
        counts[a] += 1
    return tuple(counts)


@dataclass(frozen=True)
class DiffOperator:
    """``sum_alpha c_alpha(x) d^alpha`` with per-axis count multi-indices."""

    dim: int
    terms: tuple  # ((alpha, coeff), ...) sorted by alpha

    @classmethod
    def from_dict(cls, dim: int, acc: dict) -> "DiffOperator":
        return cls(dim, tuple((a, c) for a, c in sorted(acc.items()) if not c.is_zero()))

    @classmethod
    def zero(cls, dim: int) -> "DiffOperator":
        return cls(dim, ())

    @classmethod
    def multiplication(cls, f: ScalarField) -> "DiffOperator":
        return cls.from_dict(f.dim, {(0,) * f.dim: f})

    def as_dict(self) -> dict:
        return dict(self.terms)

    def __call__(self, psi: ScalarField) -> ScalarField:
        out = ScalarField.zero(self.dim)
        for alpha, c in self.terms:
            d = psi.derivative(alpha)
            if not d.is_zero():
                out = out + c * d
        return out

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        acc = self.as_dict()
        for a, c in other.terms:
            acc[a] = acc[a] + c if a in acc else c
        return DiffOperator.from_dict(self.dim, acc)

    def __neg__(self):
        return DiffOperator(self.dim, tuple((a, -c) for a, c in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def compose(self, other: "DiffOperator") -> "DiffOperator":
        """``(self o other) psi = self(other(psi))`` via the generalized Leibniz rule."""
        acc: dict = {}
        for alpha, a in self.terms:
            for beta, b in other.terms:
                for gamma in _sub_indices(alpha):
                    weight = 1
                    for ai, gi in zip(alpha, gamma):
                        weight *= comb(ai, gi)
                    db = b.derivative(gamma)
                    if db.is_zero():
                        continue
                    idx = tuple(ai - gi + bi for ai, gi, bi in zip(alpha, gamma, beta))
                    term = (a * db).scale(weight)
                    acc[idx] = acc[idx] + term if idx in acc else term
        return DiffOperator.from_dict(self.dim, acc)


def _sub_indices(alpha):
    if not alpha:
        yield ()
        return
    for head in range(alpha[0] + 1):
        for rest in _sub_indices(alpha[1:]):
            yield (head,) + rest


@dataclass(frozen=True)
class OperatorExpansion:
    """Differential operators at theta-grades 0..MAX_GRADE."""

    grades: tuple

    @property
    def dim(self) -> int:
        return self.grades[0].dim

    def __call__(self, psi) -> Graded:
        Psi = psi if isinstance(psi, Graded) else lift(psi)
        out = [ScalarField.zero(self.dim) for _ in range(MAX_GRADE + 1)]
        for k, op in enumerate(self.grades):
            for p in range(MAX_GRADE + 1 - k):
                if not Psi[p].is_zero():
                    out[k + p] = out[k + p] + op(Psi[p])
        return Graded(out)

    def compose(self, other: "OperatorExpansion") -> "OperatorExpansion":
        out = [DiffOperator.zero(self.dim) for _ in range(MAX_GRADE + 1)]
        for k, a in enumerate(self.grades):
            for q in range(MAX_GRADE + 1 - k):
                out[k + q] = out[k + q] + a.compose(other.grades[q])
        return OperatorExpansion(tuple(out))

    def __sub__(self, other: "OperatorExpansion") -> "OperatorExpansion":
        return OperatorExpansion(tuple(a - b for a, b in zip(self.grades, other.grades)))

    def commutator(self, other: "OperatorExpansion") -> "OperatorExpansion":
        return self.compose(other) - other.compose(self)


@dataclass(frozen=True)
class StateFunction:
    """Wavefunction ``scale * psi``; ``scale`` carries irrational normalisation exactly."""

    psi: ScalarField
    scale: ExactValue = field(default_factory=lambda: ExactValue.rational(1))
    label: tuple | None = None

    def norm_sq(self, m: Measure) -> ExactValue:
        return self.scale.conjugate() * self.scale * trace(self.psi.conjugate() * self.psi, m)


def xhat(i: int, w: Bivector, m: Measure, b=None) -> OperatorExpansion:
    """``x^i + (i/2) w^{ij} d_j + (1/12) w^{kj} d_j w^{il} d_k d_l - 2 b^{ik} d_k``."""
    n = w.dim
    if b is None:
        b = gauge_tensor_b(m, w)
    g0 = DiffOperator.multiplication(ScalarField.coordinate(n, i))
    g1 = {}
    for j in range(n):
        if not w[i, j].is_zero():
            g1[_unit(n, j)] = w[i, j].scale(HALF_I)
    T = drift_tensor(w)
    g2: dict = {}
    for k in range(n):
        for l in range(n):
            c = T[k][i][l]
            if not c.is_zero():
                key = _unit(n, k, l)
                c = c.scale(Fraction(1, 12))
                g2[key] = g2[key] + c if key in g2 else c
    for k in range(n):
        key = _unit(n, k)
        c = b[i][k].scale(-2)
        g2[key] = g2[key] + c if key in g2 else c
    return OperatorExpansion((g0, DiffOperator.from_dict(n, g1), DiffOperator.from_dict(n, g2)))


def _check_positive(m: Measure, probes=((0.3, 0.5, 0.7), (1.1, -0.4, 0.2), (-2.0, 1.5, -0.9))):
    for p in probes:
        v = m.mu.evaluate(p[: m.dim])
        if abs(v.imag) > 1e-14 or v.real <= 0:
            raise NonPositiveMeasureError(f"mu is not positive at {p}")


def phat(i: int, m: Measure) -> OperatorExpansion:
    """``-i d_i - (i/2) d_i ln mu`` (theta independent)."""
    _check_positive(m)
    n = m.dim
    lg = log_gradient(m)[i]
    acc = {_unit(n, i): ScalarField.constant(n, -I)}
    if not lg.is_zero():
        acc[(0,) * n] = lg.scale(-HALF_I)
    zero = DiffOperator.zero(n)
    return OperatorExpansion((DiffOperator.from_dict(n, acc), zero, zero))


def naive_momentum(i: int, dim: int = 3) -> OperatorExpansion:
    zero = DiffOperator.zero(dim)
    return OperatorExpansion((DiffOperator.from_dict(dim, {_unit(dim, i): ScalarField.constant(dim, -I)}), zero, zero))


def angular_momentum_operator(k: int) -> DiffOperator:
    """``L_k = -i eps^{kab} x_a d_b``."""
    acc = {}
    for a in range(3):
        for b in range(3):
            e = levi_civita(k, a, b)
            if e:
                acc[_unit(3, b)] = ScalarField.coordinate(3, a).scale(-I * e)
    return DiffOperator.from_dict(3, acc)


def angular_momentum(component, psi):
    """``L_k psi`` for ``component`` in 0..2, or ``L^2 psi`` for ``"sq"``.

    Accepts a ScalarField or a StateFunction (returns the same kind).
    """
    if isinstance(psi, StateFunction):
        return StateFunction(angular_momentum(component, psi.psi), psi.scale, psi.label)
    if psi.dim != 3:
        raise ValueError("angular momentum needs three dimensions")
    if component == "sq":
        out = ScalarField.zero(3)
        for k in range(3):
            op = angular_momentum_operator(k)
            out = out + op(op(psi))
        return out
    return angular_momentum_operator(component)(psi)


def inner_product_graded(Phi: Graded, Psi: Graded, B: BidiffOperator, m: Measure,
                         scale: ExactValue | None = None) -> Graded:
    prod = apply_graded(B, Phi.map(ScalarField.conjugate), Psi)
    vals = prod.map(lambda f: trace(f, m))
    if scale is not None:
        vals = vals.map(lambda v: scale * v)
    return vals


def inner_product(phi: StateFunction, psi: StateFunction, B: BidiffOperator, m: Measure) -> Graded:
    """``<phi|psi> = Tr(phi^* *' psi)`` per grade."""
    scale = phi.scale.conjugate() * psi.scale
    return inner_product_graded(lift(phi.psi), lift(psi.psi), B, m, scale)


def adjointness_defect(op: OperatorExpansion, phi: StateFunction, psi: StateFunction,
                       B: BidiffOperator, m: Measure) -> Graded:
    """``<op phi|psi> - <phi|op psi>`` per grade."""
    scale = phi.scale.conjugate() * psi.scale
    left = inner_product_graded(op(phi.psi), lift(psi.psi), B, m, scale)
    right = inner_product_graded(lift(phi.psi), op(psi.psi), B, m, scale)
    return left - right


def commutator_xx(i: int, j: int, w: Bivector, m: Measure, psi: ScalarField, b=None) -> Graded:
    """``(x^i x^j - x^j x^i) psi`` by successive application."""
    if b is None:
        b = gauge_tensor_b(m, w)
    xi, xj = xhat(i, w, m, b), xhat(j, w, m, b)
    return xi(xj(psi)) - xj(xi(psi))


def expected_commutator_xx(i: int, j: int, w: Bivector, psi: ScalarField) -> Graded:
    """``i w^{ij} psi`` at grade 1 and ``(i/2) f^2 eps^{ijk} L_k psi`` at grade 2."""
    if w.profile is None:
        raise ValueError("closed form needs a rotational bivector")
    g1 = (w[i, j] * psi).scale(I)
    g2 = ScalarField.zero(3)
    for k in range(3):
        e = levi_civita(i, j, k)
        if e:
            g2 = g2 + angular_momentum(k, psi).scale(e)
    g2 = (w.profile * w.profile * g2).scale(HALF_I)
    return Graded((ScalarField.zero(3), g1, g2))


def commutator_xp(i: int, j: int, w: Bivector, m: Measure, psi: ScalarField, b=None) -> Graded:
    if b is None:
        b = gauge_tensor_b(m, w)
    xi, pj = xhat(i, w, m, b), phat(j, m)
    return xi(pj(psi)) - pj(xi(psi))


def expected_commutator_xp(i: int, j: int, w: Bivector, m: Measure, psi: ScalarField) -> tuple:
    """Grades 0 and 1: ``i delta_ij psi`` and ``-(i/2)(d_j w^{il} p_l + i d_j(w^{il} d_l ln mu)) psi``."""
    n = w.dim
    g0 = psi.scale(I) if i == j else ScalarField.zero(n)
    lg = log_gradient(m)
    acc = ScalarField.zero(n)
    drift = ScalarField.zero(n)
    for l in range(n):
        if w[i, l].is_zero():
            continue
        p_l = phat(l, m).grades[0]
        acc = acc + w[i, l].partial(j) * p_l(psi)
        drift = drift + w[i, l] * lg[l]
    acc = acc + (drift.partial(j) * psi).scale(I)
    return g0, acc.scale(-HALF_I)


def star_multiplication(V: ScalarField, B: BidiffOperator):
    """``psi -> V *' psi`` as a callable on fields or graded fields."""
    def act(psi):
        Psi = psi if isinstance(psi, Graded) else lift(psi)
        return apply_graded(B, lift(V), Psi)
    return act
