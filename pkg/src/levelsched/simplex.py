"""Exact rational simplex for small maximization models.

Standard form: maximize c.x subject to A.x <= b, x >= 0 with b >= 0, so the
slack basis is immediately feasible and no phase-1 is needed.  Pivoting uses
Bland's rule, which makes the solver deterministic and cycle-free; arithmetic
is fractions.Fraction throughout, so optima are exact.
"""

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class LpModel:
    """objective: coefficient per variable; rows: (coeffs, bound) with
    coeffs aligned to the variables; labels: one name per variable."""

    objective: tuple
    rows: tuple
    labels: tuple

    def __post_init__(self):
        nv = len(self.objective)
        if len(self.labels) != nv:
            raise ValueError("one label per variable required")
        for coeffs, bound in self.rows:
            if len(coeffs) != nv:
                raise ValueError("row width does not match the variable count")
            if Fraction(bound) < 0:
                raise ValueError("bounds must be nonnegative (slack start)")


def lp_solve(model):
    """Maximize the model; returns (optimal value, {label: value}).

    Raises RuntimeError when the model is unbounded.
    """
    nv = len(model.objective)
    m = len(model.rows)
    width = nv + m + 1
    # tableau rows: [a_1 .. a_nv, slacks, rhs]
    tab = []
    for r, (coeffs, bound) in enumerate(model.rows):
        row = [Fraction(v) for v in coeffs] + [Fraction(0)] * m + [Fraction(bound)]
        row[nv + r] = Fraction(1)
        tab.append(row)
    # reduced-cost row for the max problem: positive entry => improving column
    z = [Fraction(v) for v in model.objective] + [Fraction(0)] * (m + 1)
    basis = [nv + r for r in range(m)]

    for _ in range(100_000):
        entering = next((j for j in range(width - 1) if z[j] > 0), None)
        if entering is None:
            break
        leaving = None
        best = None
        for r in range(m):
            if tab[r][entering] <= 0:
                continue
            ratio = tab[r][width - 1] / tab[r][entering]
            if best is None or ratio < best or (ratio == best and basis[r] < basis[leaving]):
                best = ratio
                leaving = r
        if leaving is None:
            raise RuntimeError("linear program is unbounded")
        _pivot(tab, z, basis, leaving, entering, width)
    else:
        raise RuntimeError("simplex iteration limit exceeded")

    values = {label: Fraction(0) for label in model.labels}
    for r, var in enumerate(basis):
        if var < nv:
            values[model.labels[var]] = tab[r][width - 1]
    optimum = sum(
        Fraction(model.objective[j]) * values[model.labels[j]] for j in range(nv)
    )
    return optimum, values


def _pivot(tab, z, basis, leaving, entering, width):
    pivot_row = tab[leaving]
    factor = pivot_row[entering]
    for j in range(width):
        pivot_row[j] /= factor
    for r, row in enumerate(tab):
        if r != leaving and row[entering]:
            f = row[entering]
            for j in range(width):
                row[j] -= f * pivot_row[j]
    if z[entering]:
        f = z[entering]
        for j in range(width):
            z[j] -= f * pivot_row[j]
    basis[leaving] = entering
