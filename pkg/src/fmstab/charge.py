"""Twisted central charge, slopes, Hilbert polynomials and slope comparison.

For a class ``(chi, beta)`` and a stability parameter ``(B + iJ, L)`` the
charge is::

    Z = (chi - (B + c1/4) . beta) - i (J + L) . beta

with ``c1`` the (optional) first Chern class correction of the target.  The
Z-slope is ``-Re Z / Im Z``; classes with ``beta = 0`` get slope ``+inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import partial
from typing import Callable, NamedTuple, Sequence

from .errors import InvalidParameter, MalformedInput, NotInLowerHalf, ZeroObject
from .lattice import AmbientData, Beta, NumClass, format_rational, pair, parse_rational

Slope = Fraction | float  # float only for math.inf
SlopeFn = Callable[[NumClass], Slope]

_QUARTER = Fraction(1, 4)


@dataclass(frozen=True)
class StabilityParameter:
    """A point of the parameter space, as values of B, J, L on each generator.

    ``c1`` is carried along so that the charge can apply the first Chern
    class correction; it is not a coordinate of the parameter space.
    """

    B: tuple[Fraction, ...]
    J: tuple[Fraction, ...]
    L: tuple[Fraction, ...]
    c1: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        for name in ("B", "J", "L", "c1"):
            val = getattr(self, name)
            if val is not None:
                object.__setattr__(self, name, tuple(Fraction(x) for x in val))
        if not (len(self.B) == len(self.J) == len(self.L)):
            raise MalformedInput("B, J, L must have one value per generator")
        if self.c1 is None:
            object.__setattr__(self, "c1", (Fraction(0),) * len(self.B))

    @property
    def JL(self) -> tuple[Fraction, ...]:
        return tuple(j + l for j, l in zip(self.J, self.L))

    @property
    def B_eff(self) -> tuple[Fraction, ...]:
        """B shifted by a quarter of c1."""
        return tuple(b + _QUARTER * c for b, c in zip(self.B, self.c1))

    @property
    def is_valid(self) -> bool:
        return all(v > 0 for v in self.JL)

    def validate(self) -> StabilityParameter:
        bad = [i for i, v in enumerate(self.JL) if v <= 0]
        if bad:
            raise InvalidParameter(f"J+L is not positive on generators {bad}", generators=bad)
        return self

    def scaled(self, lam) -> StabilityParameter:
        """Replace ``(J, L)`` by ``(lam J, lam L)``."""
        lam = Fraction(lam)
        return StabilityParameter(self.B, tuple(lam * j for j in self.J), tuple(lam * l for l in self.L), self.c1)

    def to_json(self) -> dict:
        return {k: [format_rational(x) for x in getattr(self, k)] for k in ("B", "J", "L")}


def parameter_from_ambient(ambient: AmbientData) -> StabilityParameter:
    """The parameter point given by the ambient's own B, J, L pairings."""
    return StabilityParameter(
        ambient.generator_values("B"),
        ambient.generator_values("J"),
        ambient.generator_values("L"),
        ambient.generator_values("c1"),
    )


def parameter_from_json(doc: dict, ambient: AmbientData) -> StabilityParameter:
    """Read ``{"B": [...], "J": [...], "L": [...]}`` (values on generators)."""
    try:
        vals = {k: tuple(parse_rational(x) for x in doc[k]) for k in ("B", "J", "L")}
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"parameter document needs B, J, L: {exc}") from exc
    for k, v in vals.items():
        if len(v) != ambient.ngens:
            raise MalformedInput(f"{k} needs {ambient.ngens} values, got {len(v)}")
    return StabilityParameter(c1=ambient.generator_values("c1"), **vals).validate()


class Chart:
    """Named real coordinates on the parameter space.

    Each coordinate fills one or more B/J/L slots (``(kind, generator)``
    pairs); unfilled slots keep the value of ``base``.  A coordinate may feed
    B slots or J/L slots but not both, so the wall function stays affine in
    every single coordinate.
    """

    def __init__(self, coords: Sequence[tuple[str, Sequence[tuple[str, int]]]], base: StabilityParameter):
        self.names = tuple(name for name, _ in coords)
        self.slots = {name: tuple((k, int(i)) for k, i in slots) for name, slots in coords}
        self.base = base
        n = len(base.B)
        for name, slots in self.slots.items():
            kinds = {k for k, _ in slots}
            if not kinds <= {"B", "J", "L"}:
                raise MalformedInput(f"coordinate {name} has unknown slot kinds {kinds}")
            if "B" in kinds and kinds & {"J", "L"}:
                raise MalformedInput(f"coordinate {name} mixes B and J/L slots")
            if any(not 0 <= i < n for _, i in slots):
                raise MalformedInput(f"coordinate {name} refers to a missing generator")

    @classmethod
    def for_ambient(cls, ambient: AmbientData) -> Chart:
        base = parameter_from_ambient(ambient)
        if ambient.chart is not None:
            return cls(ambient.chart, base)
        coords = [(f"{k}{i + 1}", [(k, i)]) for k in ("B", "J", "L") for i in range(ambient.ngens)]
        return cls(coords, base)

    def is_b_coordinate(self, name: str) -> bool:
        return any(k == "B" for k, _ in self.slots[name])

    def point(self, coords: dict) -> StabilityParameter:
        vals = {"B": list(self.base.B), "J": list(self.base.J), "L": list(self.base.L)}
        for name, x in coords.items():
            if name not in self.slots:
                raise MalformedInput(f"unknown coordinate {name!r}; known: {', '.join(self.names)}")
            for kind, i in self.slots[name]:
                vals[kind][i] = Fraction(x)
        return StabilityParameter(vals["B"], vals["J"], vals["L"], self.base.c1)

    def coordinates(self, p: StabilityParameter) -> dict:
        out = {}
        for name in self.names:
            kind, i = self.slots[name][0]
            out[name] = getattr(p, kind)[i]
        return out


@dataclass(frozen=True)
class CentralCharge:
    re: Fraction
    im: Fraction

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    def __add__(self, other: CentralCharge) -> CentralCharge:
        return CentralCharge(self.re + other.re, self.im + other.im)

    def __sub__(self, other: CentralCharge) -> CentralCharge:
        return CentralCharge(self.re - other.re, self.im - other.im)

    def __str__(self) -> str:
        sign = "-" if self.im < 0 else "+"
        return f"{self.re} {sign} {abs(self.im)}i"

    def to_json(self) -> dict:
        return {"re": str(self.re), "im": str(self.im)}

    @classmethod
    def from_json(cls, doc: dict) -> CentralCharge:
        try:
            return cls(parse_rational(doc["re"]), parse_rational(doc["im"]))
        except (KeyError, TypeError) as exc:
            raise MalformedInput(f"charge document needs re and im: {doc!r}") from exc


def central_charge(p: StabilityParameter, n: NumClass) -> CentralCharge:
    re = n.chi - _dot(p.B_eff, n.beta)
    im = -_dot(p.JL, n.beta)
    return CentralCharge(re, im)


def _dot(values: Sequence[Fraction], beta: Beta) -> Fraction:
    return sum((a * v for a, v in zip(beta, values)), Fraction(0))


def in_lower_half(z: CentralCharge) -> bool:
    return z.im < 0 or (z.im == 0 and z.re > 0)


def z_slope(p: StabilityParameter, n: NumClass) -> Slope:
    if n.is_zero:
        raise ZeroObject("slope of the zero class")
    denom = _dot(p.JL, n.beta)
    if not any(n.beta):
        return math.inf
    return (n.chi - _dot(p.B_eff, n.beta)) / denom


def p_slope(ambient: AmbientData, n: NumClass) -> Slope:
    """Slope ``chi / (H . beta)`` of the Hilbert polynomial."""
    if n.is_zero:
        raise ZeroObject("slope of the zero class")
    if not any(n.beta):
        return math.inf
    return n.chi / pair(ambient, "H", n.beta)


def z_slope_fn(p: StabilityParameter) -> SlopeFn:
    return partial(z_slope, p)


def p_slope_fn(ambient: AmbientData) -> SlopeFn:
    return partial(p_slope, ambient)


class HilbertPolynomial(NamedTuple):
    """``leading * m + constant``."""

    leading: Fraction
    constant: int

    def __str__(self) -> str:
        return f"{self.leading}m + {self.constant}"


def hilbert_polynomial(ambient: AmbientData, n: NumClass) -> HilbertPolynomial:
    leading = pair(ambient, "H", n.beta)
    if all(h.denominator == 1 for h in ambient.generator_values("H")):
        leading = int(leading)
    return HilbertPolynomial(leading, n.chi)


def enumerate_classes_with_charge(p: StabilityParameter, c: CentralCharge) -> list[NumClass]:
    """Every admissible class whose charge at ``p`` equals ``c``.

    Coefficients are bounded by ``a_i <= -Im c / (J+L)(g_i)``; the search
    walks the box generator by generator with the remaining imaginary budget.
    """
    if not in_lower_half(c):
        raise NotInLowerHalf(f"{c} is not in the completed lower half-plane")
    p.validate()
    jl = p.JL
    target = -c.im
    k = len(jl)
    found = []

    def walk(i: int, prefix: list[int], budget: Fraction):
        if i == k:
            if budget == 0:
                beta = tuple(prefix)
                chi = c.re + _dot(p.B_eff, beta)
                if chi.denominator == 1:
                    n = NumClass(int(chi), beta)
                    if n.is_admissible:
                        found.append(n)
            return
        for a in range(int(budget // jl[i]) + 1):
            prefix.append(a)
            walk(i + 1, prefix, budget - a * jl[i])
            prefix.pop()

    walk(0, [], target)
    return sorted(found, key=lambda n: (n.beta, n.chi))


def hilbert_polynomials_for_charge(ambient: AmbientData, p: StabilityParameter, c: CentralCharge) -> list[HilbertPolynomial]:
    """Distinct Hilbert polynomials of the classes with charge ``c``, sorted."""
    return sorted({hilbert_polynomial(ambient, n) for n in enumerate_classes_with_charge(p, c)})


class SlopeBounds(NamedTuple):
    """Extremes over the generators of ``H/(J+L)`` and ``-B/(J+L)``.

    For every class with ``beta != 0``::

        mu_Z = r(beta) * mu_P + s(beta),  r in [r_min, r_max],  s in [s_min, s_max]
    """

    r_min: Fraction
    r_max: Fraction
    s_min: Fraction
    s_max: Fraction

    def sandwich(self, mu_p: Fraction) -> tuple[Fraction, Fraction]:
        """Interval guaranteed to contain ``mu_Z`` given ``mu_P``."""
        a, b = self.r_min * mu_p, self.r_max * mu_p
        return min(a, b) + self.s_min, max(a, b) + self.s_max


def slope_comparison_bounds(ambient: AmbientData, p: StabilityParameter) -> SlopeBounds:
    # both ratios are weighted mediants of their generator values
    jl = p.validate().JL
    h = ambient.generator_values("H")
    r = [hi / d for hi, d in zip(h, jl)]
    s = [-b / d for b, d in zip(p.B_eff, jl)]
    return SlopeBounds(min(r), max(r), min(s), max(s))
