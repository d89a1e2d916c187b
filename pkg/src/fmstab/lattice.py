"""Numerical lattice, simplicial effective cone and divisor pairings.

Curve classes are stored in *generator coordinates*: a class is a tuple of
nonnegative integers ``(a_1, ..., a_k)`` standing for ``sum a_i g_i`` where
``g_i`` are the cone generators.  Componentwise order on these tuples is the
order used for the interval ``0 < xi < beta0``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    DependentGenerators,
    InadmissibleClass,
    MalformedInput,
    NonPositivePairing,
    ZeroClass,
)

Beta = tuple[int, ...]
FUNCTIONALS = ("B", "J", "L", "H", "c1", "J+L")


def parse_rational(value) -> Fraction:
    """Parse an int or a ``"p/q"`` string into a Fraction.

    Floats are refused: they cannot round-trip exactly.
    """
    if isinstance(value, bool):
        raise MalformedInput(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedInput(f"not a rational: {value!r}") from exc
    raise MalformedInput(f"not a rational: {value!r}")


def format_rational(q: Fraction) -> int | str:
    """Canonical JSON form: an int when integral, else ``"p/q"`` in lowest terms."""
    q = Fraction(q)
    if q.denominator == 1:
        return q.numerator
    return f"{q.numerator}/{q.denominator}"


def _dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


@dataclass(frozen=True)
class AmbientData:
    """The lattice ``N_1 = Z^rank`` with a simplicial effective cone and pairings.

    Pairings are functionals on ``Z^rank`` (row vectors).  ``chart`` optionally
    names real coordinates of the stability-parameter space; see
    :class:`fmstab.charge.Chart`.
    """

    rank: int
    generators: tuple[tuple[int, ...], ...]
    B: tuple[Fraction, ...]
    J: tuple[Fraction, ...]
    L: tuple[Fraction, ...]
    H: tuple[Fraction, ...]
    c1: tuple[Fraction, ...] | None = None
    chart: tuple[tuple[str, tuple[tuple[str, int], ...]], ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(tuple(int(x) for x in g) for g in self.generators))
        for name in ("B", "J", "L", "H", "c1"):
            val = getattr(self, name)
            if val is None:
                continue
            val = tuple(Fraction(x) for x in val)
            if len(val) != self.rank:
                raise MalformedInput(f"functional {name} has length {len(val)}, expected {self.rank}")
            object.__setattr__(self, name, val)
        for g in self.generators:
            if len(g) != self.rank:
                raise MalformedInput(f"generator {g} has length {len(g)}, expected {self.rank}")

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def functional(self, name: str) -> tuple[Fraction, ...]:
        if name == "J+L":
            return tuple(j + l for j, l in zip(self.J, self.L))
        if name == "c1":
            return self.c1 if self.c1 is not None else (Fraction(0),) * self.rank
        if name not in ("B", "J", "L", "H"):
            raise KeyError(name)
        return getattr(self, name)

    def generator_values(self, name: str) -> tuple[Fraction, ...]:
        """Values of a functional on each cone generator."""
        f = self.functional(name)
        return tuple(_dot(f, g) for g in self.generators)

    def zero_class(self) -> Beta:
        return (0,) * self.ngens


def rational_rank(rows: Iterable[Sequence]) -> int:
    """Rank over Q by exact Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col] != 0:
                factor = m[i][col] / m[rank][col]
                m[i] = [a - factor * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def validate_ambient(raw: AmbientData) -> AmbientData:
    """Check the positivity and simpliciality hypotheses.

    Raises the first violation found; its ``problems`` attribute lists all of
    them.
    """
    problems = []
    if raw.rank < 1:
        problems.append(MalformedInput("rank must be positive"))
    if len(set(raw.generators)) != len(raw.generators):
        problems.append(DependentGenerators("cone generators are not pairwise distinct"))
    for i, g in enumerate(raw.generators):
        if not any(g):
            problems.append(DependentGenerators(f"generator {i} is zero", generator=i))
    for name in ("J+L", "H"):
        for i, v in enumerate(raw.generator_values(name)):
            if v <= 0:
                problems.append(
                    NonPositivePairing(
                        f"{name} evaluates to {v} on generator {i}",
                        functional=name,
                        generator=i,
                        value=v,
                    )
                )
    structural_ok = len(set(raw.generators)) == len(raw.generators) and all(any(g) for g in raw.generators)
    if raw.generators and structural_ok and rational_rank(raw.generators) < len(raw.generators):
        problems.append(DependentGenerators("cone generators are linearly dependent over Q"))
    if not raw.generators:
        problems.append(MalformedInput("at least one cone generator is required"))
    if problems:
        err = problems[0]
        err.problems = problems
        raise err
    return raw


def check_beta(ambient: AmbientData, beta: Sequence[int]) -> Beta:
    beta = tuple(int(a) for a in beta)
    if len(beta) != ambient.ngens:
        raise MalformedInput(f"class {beta} needs {ambient.ngens} generator coefficients")
    if any(a < 0 for a in beta):
        raise MalformedInput(f"class {beta} has a negative coefficient")
    return beta


def pair(ambient: AmbientData, functional: str, beta: Sequence[int]) -> Fraction:
    """``functional . beta`` for a class given in generator coordinates."""
    values = ambient.generator_values(functional)
    return sum((a * v for a, v in zip(beta, values)), Fraction(0))


def enumerate_interval(beta0: Sequence[int]) -> list[Beta]:
    """All classes ``xi`` with ``0 < xi < beta0`` componentwise, lexicographic."""
    beta0 = tuple(beta0)
    if not any(beta0):
        raise ZeroClass("the interval below the zero class is empty by definition")
    zero = (0,) * len(beta0)
    return [
        xi
        for xi in itertools.product(*(range(a + 1) for a in beta0))
        if xi != zero and xi != beta0
    ]


@dataclass(frozen=True, order=True)
class NumClass:
    """Numerical class ``(chi, beta)`` of a sheaf of dimension at most one."""

    chi: int
    beta: Beta = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "chi", int(self.chi))
        object.__setattr__(self, "beta", tuple(int(a) for a in self.beta))

    def __add__(self, other: NumClass) -> NumClass:
        return NumClass(self.chi + other.chi, tuple(a + b for a, b in zip(self.beta, other.beta)))

    def __sub__(self, other: NumClass) -> NumClass:
        return NumClass(self.chi - other.chi, tuple(a - b for a, b in zip(self.beta, other.beta)))

    @property
    def is_zero(self) -> bool:
        return self.chi == 0 and not any(self.beta)

    @property
    def is_effective(self) -> bool:
        return all(a >= 0 for a in self.beta)

    @property
    def is_admissible(self) -> bool:
        """Class of a nonzero sheaf of dimension <= 1: effective, and ``chi > 0`` if ``beta = 0``."""
        if not self.is_effective:
            return False
        return any(self.beta) or self.chi > 0

    def require_admissible(self) -> NumClass:
        if not self.is_admissible:
            raise InadmissibleClass(f"{self} is not the class of a nonzero sheaf of dimension <= 1")
        return self

    def to_json(self) -> dict:
        return {"chi": self.chi, "beta": list(self.beta)}

    @classmethod
    def from_json(cls, doc: dict) -> NumClass:
        try:
            chi = doc["chi"]
            beta = doc["beta"]
        except (KeyError, TypeError) as exc:
            raise MalformedInput(f"class document needs 'chi' and 'beta': {doc!r}") from exc
        if not isinstance(chi, int) or isinstance(chi, bool):
            raise MalformedInput(f"chi must be an integer: {chi!r}")
        if not all(isinstance(a, int) and not isinstance(a, bool) for a in beta):
            raise MalformedInput(f"beta must be a list of integers: {beta!r}")
        return cls(chi, tuple(beta))

    def __str__(self) -> str:
        return f"({self.chi}; {', '.join(map(str, self.beta))})"


def ambient_from_json(doc: dict) -> AmbientData:
    """Build (unvalidated) ambient data from its JSON document."""
    try:
        rank = doc["rank"]
        gens = doc["generators"]
        funcs = {name: [parse_rational(x) for x in doc[name]] for name in ("B", "J", "L", "H")}
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"ambient document is missing a field: {exc}") from exc
    if not isinstance(rank, int) or isinstance(rank, bool):
        raise MalformedInput("rank must be an integer")
    for g in gens:
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in g):
            raise MalformedInput(f"generator {g!r} must be a list of integers")
    c1 = doc.get("c1")
    chart = doc.get("chart")
    if chart is not None:
        chart = tuple((str(name), tuple((str(k), int(i)) for k, i in slots)) for name, slots in chart.items())
    return AmbientData(
        rank=rank,
        generators=tuple(tuple(g) for g in gens),
        c1=None if c1 is None else tuple(parse_rational(x) for x in c1),
        chart=chart,
        **funcs,
    )


def ambient_to_json(ambient: AmbientData) -> dict:
    doc = {
        "rank": ambient.rank,
        "generators": [list(g) for g in ambient.generators],
    }
    for name in ("B", "J", "L", "H"):
        doc[name] = [format_rational(x) for x in getattr(ambient, name)]
    if ambient.c1 is not None:
        doc["c1"] = [format_rational(x) for x in ambient.c1]
    if ambient.chart is not None:
        doc["chart"] = {name: [list(s) for s in slots] for name, slots in ambient.chart}
    return doc
