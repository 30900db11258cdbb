"""Univariate polynomials and their real factorizations.

A real polynomial of degree N splits over the reals into linear factors for
its real roots and monic quadratic factors x^2 + a x + b for each complex
conjugate pair, with l1 + 2*l2 = N.  factor_polynomial computes that split
numerically: companion-matrix eigenvalues, a few Newton polish steps, then a
re-expansion residual check that fails loudly instead of returning garbage.

bernstein_coeffs expands the degree-n Bernstein approximant of a function on
[0, 1] into monomial coefficients using exact rational arithmetic for the
binomial part, so the only rounding comes from the sampled function values.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np


class FactorizationError(RuntimeError):
    """Root finding failed to reproduce the input coefficients.

    Carries the relative re-expansion residual that triggered the failure.
    """

    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (relative residual {residual:.3e})")
        self.residual = residual


@dataclass
class Polynomial:
    """Coefficients lowest degree first; exact trailing zeros are trimmed."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=np.float64))
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficients must be a non-empty 1-D sequence")
        last = c.size - 1
        while last > 0 and c[last] == 0.0:
            last -= 1
        self.coeffs = c[: last + 1].copy()

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def to_json(self) -> str:
        return json.dumps({"coeffs": self.coeffs.tolist()})

    @classmethod
    def from_json(cls, text: str) -> "Polynomial":
        return cls(np.asarray(json.loads(text)["coeffs"], dtype=np.float64))


@dataclass
class FactoredForm:
    """scale * prod(x - x_i) * prod(x^2 + a_j x + b_j).

    Quadratic factors normally hold complex conjugate root pairs (negative
    discriminant); a factor may instead merge two real roots when the
    corresponding paired_real flag is set.
    """

    scale: float
    linear_roots: list[float] = field(default_factory=list)
    quadratic_factors: list[tuple[float, float]] = field(default_factory=list)
    paired_real: list[bool] | None = None

    def __post_init__(self):
        self.scale = float(self.scale)
        self.linear_roots = [float(r) for r in self.linear_roots]
        self.quadratic_factors = [
            (float(a), float(b)) for a, b in self.quadratic_factors
        ]
        if self.paired_real is None:
            self.paired_real = [False] * len(self.quadratic_factors)
        if len(self.paired_real) != len(self.quadratic_factors):
            raise ValueError("paired_real must parallel quadratic_factors")
        for (a, b), paired in zip(self.quadratic_factors, self.paired_real):
            if not paired and a * a - 4.0 * b >= 0.0:
                raise ValueError(
                    f"quadratic factor ({a}, {b}) has non-negative discriminant "
                    "but is not flagged as a paired-real factor"
                )

    @property
    def degree(self) -> int:
        return len(self.linear_roots) + 2 * len(self.quadratic_factors)

    @property
    def factor_count(self) -> int:
        return len(self.linear_roots) + len(self.quadratic_factors)

    def to_json(self) -> str:
        return json.dumps(
            {
                "scale": self.scale,
                "linear_roots": self.linear_roots,
                "quadratic_factors": [list(q) for q in self.quadratic_factors],
                "paired_real": self.paired_real,
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "FactoredForm":
        doc = json.loads(text)
        return cls(
            scale=doc["scale"],
            linear_roots=doc["linear_roots"],
            quadratic_factors=[tuple(q) for q in doc["quadratic_factors"]],
            paired_real=doc["paired_real"],
        )


def _companion_matrix(monic: np.ndarray) -> np.ndarray:
    """Companion matrix of a monic polynomial given non-leading coefficients."""
    n = len(monic)
    m = np.zeros((n, n))
    m[1:, :-1] = np.eye(n - 1)
    m[:, -1] = -monic
    return m


def _poly_val(coeffs: np.ndarray, z: complex) -> complex:
    acc = 0.0 + 0.0j
    for c in coeffs[::-1]:
        acc = acc * z + c
    return acc


def _newton_polish(coeffs: np.ndarray, z: complex, steps: int = 3) -> complex:
    deriv = coeffs[1:] * np.arange(1, len(coeffs))
    best = z
    best_val = abs(_poly_val(coeffs, z))
    for _ in range(steps):
        dp = _poly_val(deriv, z)
        if dp == 0:
            break
        z = z - _poly_val(coeffs, z) / dp
        val = abs(_poly_val(coeffs, z))
        if val < best_val:
            best, best_val = z, val
    return best


def factor_polynomial(
    p: Polynomial, rel_tol: float = 1e-8, pair_real_roots: bool = False
) -> FactoredForm:
    """Split a real polynomial into real linear and quadratic factors.

    Roots come from companion-matrix eigenvalues with Newton polish; a root
    counts as real when |Im z| < 1e-9 * (1 + |z|).  With pair_real_roots,
    leftover real roots are merged pairwise into real-discriminant quadratic
    factors (flagged), which balances the downstream product tree.

    Raises ValueError for degree 0 and FactorizationError when re-expanding
    the factors misses the input coefficients by more than rel_tol.
    """
    from .oracles import expand_factored

    coeffs = p.coeffs
    n = p.degree
    if n < 1:
        raise ValueError("cannot factor a polynomial of degree 0")
    scale = coeffs[-1]
    monic = coeffs[:-1] / scale
    roots = np.linalg.eigvals(_companion_matrix(monic))
    roots = np.array([_newton_polish(coeffs, z) for z in roots])

    real_tol = 1e-9 * (1.0 + np.abs(roots))
    real_roots = sorted(roots[np.abs(roots.imag) < real_tol].real)
    complex_roots = roots[np.abs(roots.imag) >= real_tol]
    upper = sorted(
        (z for z in complex_roots if z.imag > 0), key=lambda z: (z.real, z.imag)
    )
    if 2 * len(upper) != len(complex_roots):
        raise FactorizationError(
            "complex roots did not pair into conjugates", float("nan")
        )

    quads = [(-2.0 * z.real, float(abs(z) ** 2)) for z in upper]
    paired = [False] * len(quads)
    if pair_real_roots:
        while len(real_roots) >= 2:
            r1, r2 = real_roots.pop(), real_roots.pop()
            quads.append((-(r1 + r2), r1 * r2))
            paired.append(True)

    form = FactoredForm(
        scale=float(scale),
        linear_roots=list(real_roots),
        quadratic_factors=quads,
        paired_real=paired,
    )
    if form.degree != n:
        raise FactorizationError("factor degrees do not sum to the input degree",
                                 float("nan"))

    rebuilt = expand_factored(form).coeffs
    if len(rebuilt) != len(coeffs):
        raise FactorizationError("re-expansion changed the degree", float("inf"))
    residual = float(
        np.max(np.abs(rebuilt - coeffs)) / (1.0 + np.max(np.abs(coeffs)))
    )
    if residual >= rel_tol:
        raise FactorizationError("re-expansion residual too large", residual)
    return form


def _sample_exact(f, m: int, n: int) -> Fraction:
    """f(m/n) as an exact rational where the callable allows it."""
    try:
        value = f(Fraction(m, n))
    except (TypeError, AttributeError):
        value = f(m / n)
    if isinstance(value, Fraction):
        return value
    return Fraction(float(value))


def bernstein_coeffs(f, n: int) -> Polynomial:
    """Monomial coefficients of sum_m f(m/n) C(n,m) x^m (1-x)^(n-m).

    The binomial expansion is carried out in exact rational arithmetic, and f
    is sampled at exact rationals m/n whenever it tolerates Fraction inputs,
    so polynomial targets expand without rounding at any n.  Coefficients
    tiny relative to the largest one (below 1e-12 relative) are zeroed: for
    float-valued targets they are sampling noise amplified by the binomials
    and would otherwise inflate the degree.
    """
    if n <= 0:
        raise ValueError("Bernstein degree must be >= 1")
    values = [_sample_exact(f, m, n) for m in range(n + 1)]
    coeffs = [Fraction(0)] * (n + 1)
    for m, fm in enumerate(values):
        if fm == 0:
            continue
        base = fm * comb(n, m)
        for j in range(n - m + 1):
            term = base * comb(n - m, j)
            coeffs[m + j] += -term if j % 2 else term
    out = np.array([float(c) for c in coeffs])
    biggest = np.max(np.abs(out))
    if biggest > 0.0:
        out[np.abs(out) < 1e-12 * biggest] = 0.0
    return Polynomial(out)
