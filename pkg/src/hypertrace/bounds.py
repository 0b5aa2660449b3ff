"""Closed-form bounds for star traces and the K_{2,t} leading coefficients.

Star-trace arithmetic is exact (integers and fractions); only the K_{2,t}
coefficients are floating point.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional, Union

from .constructions import covering_value, exact_star_value, fl_value
from .repfamily import f_bounds


class InconsistentBoundsError(AssertionError):
    pass


@dataclass(frozen=True)
class StarUpperBound:
    value: Fraction
    f_value: int
    f_exact: bool


def star_upper_bound(n: int, r: int, t: int) -> StarUpperBound:
    """``(n/r) f(r-1, t)``, using the binomial bound on f when no exact value is known."""
    if r < 2 or t < 2 or n < 0:
        raise ValueError(f"need r >= 2, t >= 2, n >= 0; got n={n}, r={r}, t={t}")
    fb = f_bounds(r - 1, t)
    f = fb.exact if fb.exact is not None else fb.upper
    return StarUpperBound(Fraction(n, r) * f, f, fb.exact is not None)


def binomial_upper_bound(n: int, r: int, t: int) -> Fraction:
    return Fraction(n, r) * comb(r + t - 2, r - 1)


_LOG_BASES = {"e": math.e, "2": 2.0, "10": 10.0}


@dataclass(frozen=True)
class K2tCoefficients:
    t: int
    new_coeff: float
    ls_coeff: Optional[float]
    log_base: str

    @property
    def ratio(self) -> Optional[float]:
        return None if self.ls_coeff is None else self.new_coeff / self.ls_coeff


def new_k2t_coefficient(t: float) -> float:
    return math.sqrt(3 * (3 * t - 1)) * (t - 1) / 3 + math.sqrt(t - 1) / 2


def luo_spiro_coefficient(t: float, base: float = math.e) -> float:
    return (t**1.5 + 55 * t * math.sqrt(math.log(t) / math.log(base))) / 6


def k2t_coefficients(t: int, log_base: Union[str, float] = "e") -> K2tCoefficients:
    """Leading n^{3/2} coefficients of the two K_{2,t} trace upper bounds.

    The Luo-Spiro coefficient is only stated for t >= 14 and contains a
    logarithm of unspecified base; ``log_base`` must be one of ``"e"``,
    ``"2"``, ``"10"``.
    """
    if t < 2:
        raise ValueError("t must be at least 2")
    key = str(log_base)
    if key not in _LOG_BASES:
        raise ValueError(f"log base must be one of {sorted(_LOG_BASES)}, got {log_base!r}")
    ls = luo_spiro_coefficient(t, _LOG_BASES[key]) if t >= 14 else None
    return K2tCoefficients(t, new_k2t_coefficient(t), ls, key)


def k2t_table(t_min: int, t_max: int, log_base: str = "e") -> list[K2tCoefficients]:
    return [k2t_coefficients(t, log_base) for t in range(t_min, t_max + 1)]


@dataclass(frozen=True)
class BoundsReport:
    n: int
    r: int
    t: int
    lower_fl: int
    lower_covering: Optional[int]
    upper_f: Fraction
    upper_binomial: Fraction
    exact: Optional[int]
    provenance: dict = field(default_factory=dict)

    @property
    def best_lower(self) -> int:
        return max(self.lower_fl, self.lower_covering or 0)

    def to_dict(self) -> dict:
        def frac(x: Fraction) -> Union[int, str]:
            return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

        return {
            "n": self.n,
            "r": self.r,
            "t": self.t,
            "lower_fl": self.lower_fl,
            "lower_covering": self.lower_covering,
            "upper_f": frac(self.upper_f),
            "upper_binomial": frac(self.upper_binomial),
            "exact": self.exact,
            "provenance": self.provenance,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def bounds_report(n: int, r: int, t: int, cov_size: Optional[int] = None) -> BoundsReport:
    """All star-trace bounds at ``(n, r, t)``; ``cov_size`` is the size of an
    (r-1)-(r+t-1, r, 1) covering available for the covering construction."""
    up = star_upper_bound(n, r, t)
    prov = {
        "lower_fl": "cliques on r+t-2 vertices",
        "upper_f": "(n/r) f(r-1,t), f exact" if up.f_exact else "(n/r) f(r-1,t) <= (n/r) C(r+t-2,r-1)",
        "upper_binomial": "(n/r) C(r+t-2,r-1)",
    }
    lower_cov = None
    if cov_size is not None:
        lower_cov = covering_value(n, r, t, cov_size)
        prov["lower_covering"] = f"cliques on r+t-1 vertices minus a covering of size {cov_size}"
    ex = exact_star_value(n, r, t)
    if ex is not None:
        prov["exact"] = ex.case
    rep = BoundsReport(
        n, r, t, fl_value(n, r, t), lower_cov, up.value, binomial_upper_bound(n, r, t),
        None if ex is None else ex.value, prov,
    )
    _check_consistency(rep)
    return rep


def _check_consistency(rep: BoundsReport) -> None:
    if rep.upper_f > rep.upper_binomial:
        raise InconsistentBoundsError(f"upper_f {rep.upper_f} exceeds binomial bound {rep.upper_binomial}")
    if rep.best_lower > rep.upper_f:
        raise InconsistentBoundsError(f"lower bound {rep.best_lower} exceeds upper bound {rep.upper_f}")
    if rep.exact is not None:
        if rep.exact != math.floor(rep.upper_f):
            raise InconsistentBoundsError(f"exact {rep.exact} differs from floor of upper {rep.upper_f}")
        if rep.best_lower > rep.exact:
            raise InconsistentBoundsError(f"lower bound {rep.best_lower} exceeds exact {rep.exact}")
