"""Antisymmetric external fields omega^{ij}(x), trace measures, and their structural residuals."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .symfield import NotRepresentableError, ScalarField

__all__ = [
    "Bivector",
    "Measure",
    "NonAdmissibleMeasureError",
    "GAUGE_PREFACTOR",
    "levi_civita",
    "rotational_bivector",
    "constant_bivector",
    "measure_for_rotational",
    "symmetric_part",
    "jacobi_residual",
    "measure_divergence",
    "log_gradient",
    "drift_tensor",
    "trace_obstruction",
    "gauge_tensor_b",
    "b_symmetry_residual",
    "is_zero_array",
]

# b^{ik} = GAUGE_PREFACTOR * (1/mu) d_l(mu w^{ij} d_j w^{lk}).  With the associative
# second-order star product the trace defect is (theta^2/24) int df M dg, and the
# -2 theta^2 b correction cancels it only for 1/48.
GAUGE_PREFACTOR = Fraction(1, 48)


class NonAdmissibleMeasureError(ValueError):
    pass


def levi_civita(i: int, j: int, k: int) -> int:
    if len({i, j, k}) < 3:
        return 0
    return 1 if (i, j, k) in ((0, 1, 2), (1, 2, 0), (2, 0, 1)) else -1


@dataclass(frozen=True)
class Bivector:
    """Antisymmetric ``dim x dim`` array of fields.

    ``profile`` is ``f`` when the bivector was built as ``eps^{ijk} x_k f``.
    """

    dim: int
    entries: tuple
    profile: ScalarField | None = field(default=None, compare=False)
    radial_power: int | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.entries) != self.dim or any(len(row) != self.dim for row in self.entries):
            raise ValueError("entries must be dim x dim")
        for i in range(self.dim):
            if not self.entries[i][i].is_zero():
                raise ValueError(f"diagonal entry ({i},{i}) is not zero")
            for j in range(i + 1, self.dim):
                if self.entries[i][j] != -self.entries[j][i]:
                    raise ValueError(f"entries ({i},{j}) and ({j},{i}) are not antisymmetric")

    @classmethod
    def from_upper(cls, dim: int, upper: dict, **kw) -> "Bivector":
        """Build from ``{(i, j): field}`` with ``i < j``; the rest is completed antisymmetrically."""
        zero = ScalarField.zero(dim)
        rows = [[zero] * dim for _ in range(dim)]
        for (i, j), f in upper.items():
            if not isinstance(f, ScalarField):
                f = ScalarField.constant(dim, f)
            if i == j:
                raise ValueError("diagonal entries are fixed to zero")
            if i > j:
                i, j, f = j, i, -f
            rows[i][j] = f
            rows[j][i] = -f
        return cls(dim, tuple(tuple(r) for r in rows), **kw)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]


@dataclass(frozen=True)
class Measure:
    mu: ScalarField

    @classmethod
    def unit(cls, dim: int = 3) -> "Measure":
        return cls(ScalarField.constant(dim, 1))

    @property
    def dim(self) -> int:
        return self.mu.dim


def measure_for_rotational(dim: int = 3, s: int = 0, beta=0) -> Measure:
    """Rotationally invariant measure ``(r^2)^{s/2} exp(-beta r^2)``."""
    return Measure(ScalarField.term(dim, 1, None, s, beta, 0))


def rotational_bivector(s: int) -> Bivector:
    """``omega^{ij} = eps^{ijk} x_k (r^2)^{s/2}`` in three dimensions."""
    f = ScalarField.radial(3, s)
    x = ScalarField.coordinates(3)
    upper = {(0, 1): x[2] * f, (1, 2): x[0] * f, (0, 2): -(x[1] * f)}
    return Bivector.from_upper(3, upper, profile=f, radial_power=s)


def constant_bivector(dim: int, upper: dict) -> Bivector:
    return Bivector.from_upper(dim, {k: ScalarField.constant(dim, v) for k, v in upper.items()})


def jacobi_residual(w: Bivector) -> tuple:
    """``J^{ijk} = w^{il} d_l w^{jk} + w^{kl} d_l w^{ij} + w^{jl} d_l w^{ki}`` as a nested tuple."""
    n = w.dim
    zero = ScalarField.zero(n)

    def flow(i, a, b):
        out = zero
        for l in range(n):
            if not w[i, l].is_zero():
                out = out + w[i, l] * w[a, b].partial(l)
        return out

    J = [[[zero] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                J[i][j][k] = flow(i, j, k) + flow(k, i, j) + flow(j, k, i)
    return tuple(tuple(tuple(row) for row in plane) for plane in J)


def measure_divergence(m: Measure, w: Bivector) -> tuple:
    """Component ``j`` is ``sum_i d_i(mu w^{ij})``."""
    n = w.dim
    out = []
    for j in range(n):
        acc = ScalarField.zero(n)
        for i in range(n):
            acc = acc + (m.mu * w[i, j]).partial(i)
        out.append(acc)
    return tuple(out)


def is_zero_array(arr) -> bool:
    if isinstance(arr, ScalarField):
        return arr.is_zero()
    return all(is_zero_array(a) for a in arr)


def log_gradient(m: Measure) -> tuple:
    """``d_i ln mu`` computed as ``(d_i mu)/mu`` inside the ring."""
    try:
        return tuple(m.mu.partial(i).divide_exact(m.mu) for i in range(m.dim))
    except NotRepresentableError as exc:
        raise NonAdmissibleMeasureError(f"1/mu is not representable: {exc}") from exc


def drift_tensor(w: Bivector) -> list:
    """``T^{ilk} = sum_j w^{ij} d_j w^{lk}``."""
    n = w.dim
    zero = ScalarField.zero(n)
    T = [[[zero] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for l in range(n):
            for k in range(n):
                acc = zero
                for j in range(n):
                    if not w[i, j].is_zero():
                        acc = acc + w[i, j] * w[l, k].partial(j)
                T[i][l][k] = acc
    return T


def trace_obstruction(m: Measure, w: Bivector) -> tuple:
    """``M^{ik} = d_l(mu w^{ij} d_j w^{lk})``."""
    n = w.dim
    T = drift_tensor(w)
    rows = []
    for i in range(n):
        row = []
        for k in range(n):
            acc = ScalarField.zero(n)
            for l in range(n):
                acc = acc + (m.mu * T[i][l][k]).partial(l)
            row.append(acc)
        rows.append(tuple(row))
    return tuple(rows)


def b_symmetry_residual(m: Measure, w: Bivector) -> tuple:
    M = trace_obstruction(m, w)
    n = w.dim
    return tuple(tuple(M[i][k] - M[k][i] for k in range(n)) for i in range(n))


def gauge_tensor_b(m: Measure, w: Bivector, *, check: bool = True) -> tuple:
    """Symmetric second-order gauge tensor that makes ``int mu f`` a trace.

    Computed as ``GAUGE_PREFACTOR * (d_l T^{ilk} + (d_l ln mu) T^{ilk})`` so that
    non-polynomial measures such as ``exp(-r^2)`` stay inside the ring.
    """
    if check and not is_zero_array(measure_divergence(m, w)):
        raise NonAdmissibleMeasureError("d_i(mu w^{ij}) does not vanish")
    n = w.dim
    lg = log_gradient(m)
    T = drift_tensor(w)
    rows = []
    for i in range(n):
        row = []
        for k in range(n):
            acc = ScalarField.zero(n)
            for l in range(n):
                acc = acc + T[i][l][k].partial(l) + lg[l] * T[i][l][k]
            row.append(acc.scale(GAUGE_PREFACTOR))
        rows.append(tuple(row))
    return tuple(rows)


def symmetric_part(b: Sequence[Sequence[ScalarField]]) -> tuple:
    n = len(b)
    return tuple(tuple((b[i][k] + b[k][i]).scale(Fraction(1, 2)) for k in range(n)) for i in range(n))
