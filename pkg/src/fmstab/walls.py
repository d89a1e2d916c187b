"""Walls and chambers in the space of stability parameters.

For a fixed class ``(chi0, beta0)`` and a candidate subclass ``(e, xi)`` with
``0 < xi < beta0`` the wall function is::

    Q = (e - B.xi) ((J+L).beta0) - (chi0 - B.beta0) ((J+L).xi)

``Q`` has the sign of ``mu(e, xi) - mu(chi0, beta0)`` wherever both classes
have negative imaginary charge.  It is affine in each B coordinate and in
each J/L coordinate separately, so on a box its extremes sit at vertices.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .charge import Chart, StabilityParameter, z_slope, z_slope_fn
from .errors import DegenerateCharge, EmptyBox, InvalidWall, MalformedInput, NotAdjacent, NotOnWall
from .lattice import AmbientData, Beta, NumClass, enumerate_interval, format_rational, parse_rational
from .objects import ObjectModel, is_semistable, is_stable

IDENTICALLY_ZERO = "identically zero"


@dataclass(frozen=True, order=True)
class WallSpec:
    chi0: int
    beta0: Beta
    e: int
    xi: Beta

    def __post_init__(self):
        object.__setattr__(self, "beta0", tuple(int(a) for a in self.beta0))
        object.__setattr__(self, "xi", tuple(int(a) for a in self.xi))
        if len(self.xi) != len(self.beta0):
            raise InvalidWall("xi and beta0 have different lengths")
        ok = (
            all(0 <= x <= b for x, b in zip(self.xi, self.beta0))
            and any(self.xi)
            and self.xi != self.beta0
        )
        if not ok:
            raise InvalidWall(f"need 0 < xi < beta0, got xi={self.xi}, beta0={self.beta0}")

    @property
    def sub_class(self) -> NumClass:
        return NumClass(self.e, self.xi)

    @property
    def whole_class(self) -> NumClass:
        return NumClass(self.chi0, self.beta0)

    def complement(self) -> WallSpec:
        return WallSpec(self.chi0, self.beta0, self.chi0 - self.e, tuple(b - x for b, x in zip(self.beta0, self.xi)))

    def polynomial(self) -> tuple[Fraction, ...]:
        """Coefficients of Q in the slot variables ``b_k`` and ``s_i = j_i + l_i``.

        Linear part ``e beta0_i - chi0 xi_i`` on ``s_i``, then bilinear part
        ``beta0_k xi_i - xi_k beta0_i`` on ``b_k s_i``.
        """
        k = len(self.xi)
        lin = [self.e * self.beta0[i] - self.chi0 * self.xi[i] for i in range(k)]
        bil = [self.beta0[a] * self.xi[i] - self.xi[a] * self.beta0[i] for a in range(k) for i in range(k)]
        return tuple(Fraction(x) for x in lin + bil)

    def to_json(self) -> dict:
        return {"e": self.e, "xi": list(self.xi), "chi0": self.chi0, "beta0": list(self.beta0)}

    @classmethod
    def from_json(cls, doc: dict) -> WallSpec:
        try:
            return cls(int(doc["chi0"]), tuple(doc["beta0"]), int(doc["e"]), tuple(doc["xi"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"malformed wall document {doc!r}") from exc


def _dot(values: Sequence[Fraction], beta: Beta) -> Fraction:
    return sum((a * v for a, v in zip(beta, values)), Fraction(0))


def wall_value(pt: StabilityParameter, w: WallSpec) -> Fraction:
    """Exact value of Q at a parameter point (B shifted by c1/4 when present)."""
    b, jl = pt.B_eff, pt.JL
    return (w.e - _dot(b, w.xi)) * _dot(jl, w.beta0) - (w.chi0 - _dot(b, w.beta0)) * _dot(jl, w.xi)


def wall_sign(pt: StabilityParameter, w: WallSpec) -> int:
    v = wall_value(pt, w)
    return (v > 0) - (v < 0)


def slope_equality_on_wall(pt: StabilityParameter, w: WallSpec) -> bool:
    """Whether the sub- and whole class have the same Z-slope at ``pt``."""
    if _dot(pt.JL, w.xi) == 0 or _dot(pt.JL, w.beta0) == 0:
        raise DegenerateCharge("slope comparison needs negative imaginary charge for both classes")
    return z_slope(pt, w.sub_class) == z_slope(pt, w.whole_class)


# -- boxes ----------------------------------------------------------------


class ParameterBox:
    """Closed box in the coordinates of a :class:`Chart`.

    Coordinates not mentioned keep the chart's base value.
    """

    def __init__(self, chart: Chart, intervals: Mapping[str, tuple]):
        self.chart = chart
        self.intervals = {}
        for name, (lo, hi) in intervals.items():
            if name not in chart.slots:
                raise MalformedInput(f"unknown coordinate {name!r}; known: {', '.join(chart.names)}")
            lo, hi = Fraction(lo), Fraction(hi)
            if lo > hi:
                raise EmptyBox(f"interval for {name} is empty: [{lo}, {hi}]")
            self.intervals[name] = (lo, hi)
        bad = [v for v in self.vertices() if not v.is_valid]
        if bad:
            raise EmptyBox("J+L is not positive at some box vertex", vertex=bad[0].to_json())

    def vertex_coordinates(self) -> list[dict]:
        names = list(self.intervals)
        corners = [sorted(set(self.intervals[n])) for n in names]
        return [dict(zip(names, combo)) for combo in itertools.product(*corners)]

    def vertices(self) -> list[StabilityParameter]:
        return [self.chart.point(c) for c in self.vertex_coordinates()]

    def contains(self, coords: Mapping[str, Fraction]) -> bool:
        return all(lo <= coords[n] <= hi for n, (lo, hi) in self.intervals.items())

    @classmethod
    def parse(cls, chart: Chart, spec: str) -> ParameterBox:
        """Parse ``"xB=-1..1,xJ=1..2"`` (endpoints may be ``p/q``)."""
        intervals = {}
        for part in filter(None, (s.strip() for s in spec.split(","))):
            try:
                name, rng = part.split("=", 1)
                lo, hi = rng.split("..", 1)
            except ValueError as exc:
                raise MalformedInput(f"bad box entry {part!r}, expected name=lo..hi") from exc
            intervals[name.strip()] = (parse_rational(lo), parse_rational(hi))
        if not intervals:
            raise MalformedInput("empty box specification")
        return cls(chart, intervals)


def _wall_e_value(pt: StabilityParameter, chi0: int, beta0: Beta, xi: Beta) -> Fraction:
    """The unique ``e`` putting ``pt`` on the wall for ``xi``."""
    b, jl = pt.B_eff, pt.JL
    return _dot(b, xi) + (chi0 - _dot(b, beta0)) * _dot(jl, xi) / _dot(jl, beta0)


def enumerate_walls_in_box(n0: NumClass, box: ParameterBox) -> list[WallSpec]:
    """All walls for ``n0`` meeting a closed box, in canonical order.

    The on-wall value of ``e`` is bilinear in (B part, (J+L) ratio) and the
    ratio is linear-fractional, so its range over the box is spanned by the
    vertex values.  Each integer in that range is a wall; the vertex sign
    pattern of Q certifies it.
    """
    vertices = box.vertices()
    walls = []
    if not any(n0.beta):
        return walls
    for xi in enumerate_interval(n0.beta):
        es = [_wall_e_value(v, n0.chi, n0.beta, xi) for v in vertices]
        for e in range(math.ceil(min(es)), math.floor(max(es)) + 1):
            w = WallSpec(n0.chi, n0.beta, e, xi)
            vals = [wall_value(v, w) for v in vertices]
            if min(vals) <= 0 <= max(vals):
                walls.append(w)
    return sorted(walls, key=lambda w: (w.xi, w.e))


def constant_sign_on_box(w: WallSpec, box: ParameterBox) -> int:
    """``+1``/``-1`` when Q keeps a strict sign at all vertices (hence on the box), else 0."""
    signs = {wall_sign(v, w) for v in box.vertices()}
    return signs.pop() if len(signs) == 1 and 0 not in signs else 0


# -- segments and chambers ---------------------------------------------------


def _lerp(p1: StabilityParameter, p2: StabilityParameter, t: Fraction) -> StabilityParameter:
    def mix(u, v):
        return tuple(a + t * (b - a) for a, b in zip(u, v))

    return StabilityParameter(mix(p1.B, p2.B), mix(p1.J, p2.J), mix(p1.L, p2.L), p1.c1)


def _segment_quadratic(p1, p2, w) -> tuple[Fraction, Fraction, Fraction]:
    q0 = wall_value(p1, w)
    qh = wall_value(_lerp(p1, p2, Fraction(1, 2)), w)
    q1 = wall_value(p2, w)
    a = 2 * q1 - 4 * qh + 2 * q0
    b = 4 * qh - 3 * q0 - q1
    return a, b, q0


def _rational_sqrt(d: Fraction) -> Fraction | None:
    n, m = math.isqrt(d.numerator), math.isqrt(d.denominator)
    if n * n == d.numerator and m * m == d.denominator:
        return Fraction(n, m)
    return None


def _sign_with_sqrt(u: Fraction, s: int, d: Fraction) -> int:
    """Sign of ``u + s*sqrt(d)`` for ``d > 0`` irrational root."""
    if s > 0:
        if u >= 0:
            return 1
        return 1 if d > u * u else -1
    if u <= 0:
        return -1
    return 1 if u * u > d else -1


def _roots_in(a, b, c, lo: Fraction, hi: Fraction, closed_lo: bool = True, closed_hi: bool = True):
    """Distinct real roots of ``a t^2 + b t + c`` in an interval, or IDENTICALLY_ZERO."""

    def inside(r: Fraction) -> bool:
        left = lo <= r if closed_lo else lo < r
        right = r <= hi if closed_hi else r < hi
        return left and right

    if a == 0 and b == 0:
        return IDENTICALLY_ZERO if c == 0 else 0
    if a == 0:
        return int(inside(-c / b))
    disc = b * b - 4 * a * c
    if disc < 0:
        return 0
    if disc == 0:
        return int(inside(-b / (2 * a)))
    root = _rational_sqrt(disc)
    if root is not None:
        return sum(inside((-b + s * root) / (2 * a)) for s in (1, -1))
    count = 0
    sa = 1 if a > 0 else -1
    for s in (1, -1):
        # sign(r - k) = sign(a) * sign(-b - 2ak + s sqrt(disc)); never zero
        above_lo = sa * _sign_with_sqrt(-b - 2 * a * lo, s, disc) > 0
        below_hi = sa * _sign_with_sqrt(-b - 2 * a * hi, s, disc) < 0
        count += above_lo and below_hi
    return count


def segment_crossings(p1: StabilityParameter, p2: StabilityParameter, w: WallSpec):
    """Number of distinct points of the closed segment lying on the wall.

    Returns :data:`IDENTICALLY_ZERO` when Q vanishes along the whole segment.
    Equal endpoints count as a single point.
    """
    if p1 == p2:
        if wall_value(p1, w) == 0:
            return IDENTICALLY_ZERO
        return 0
    a, b, c = _segment_quadratic(p1, p2, w)
    return _roots_in(a, b, c, Fraction(0), Fraction(1))


def same_chamber(p1: StabilityParameter, p2: StabilityParameter, walls: Iterable[WallSpec]) -> bool:
    """No wall touches the closed segment from ``p1`` to ``p2``."""
    for w in walls:
        if wall_value(p1, w) == 0 or wall_value(p2, w) == 0:
            return False
        if segment_crossings(p1, p2, w) != 0:
            return False
    return True


# -- catalogs ---------------------------------------------------------------


def _catalog_items(catalog) -> list[tuple[str, ObjectModel]]:
    if isinstance(catalog, Mapping):
        return sorted(catalog.items())
    return [(m.name or f"m{i}", m) for i, m in enumerate(catalog)]


def realized_walls(catalog) -> list[WallSpec]:
    """Every wall datum realized by a proper subobject node of a catalog model."""
    out = set()
    for _, m in _catalog_items(catalog):
        beta0 = m.top.beta
        for node in m.nodes[1:-1]:
            xi = node.cls.beta
            if any(xi) and xi != beta0:
                out.add(WallSpec(m.top.chi, beta0, node.cls.chi, xi))
    return sorted(out, key=lambda w: (w.beta0, w.chi0, w.xi, w.e))


def actual_walls(walls: Iterable[WallSpec], catalog) -> list[WallSpec]:
    """Walls realized by a subobject of some catalog model of the matching class."""
    realized = set(realized_walls(catalog))
    return [w for w in walls if w in realized]


def _same_locus(u: WallSpec, v: WallSpec) -> bool:
    a, b = u.polynomial(), v.polynomial()
    if len(a) != len(b):
        return False
    i = next((k for k, x in enumerate(a) if x != 0), None)
    if i is None or b[i] == 0:
        return i is None and not any(b)
    ratio = b[i] / a[i]
    return all(y == ratio * x for x, y in zip(a, b))


def catalog_verdicts(p: StabilityParameter, catalog) -> dict[str, tuple[bool, bool]]:
    """``{name: (semistable, stable)}`` at a parameter point."""
    f = z_slope_fn(p)
    return {name: (bool(is_semistable(m, f)), bool(is_stable(m, f))) for name, m in _catalog_items(catalog)}


@dataclass
class CrossingReport:
    """Outcome of crossing a single wall from ``p_minus`` to ``p_plus`` through ``p_zero``.

    ``situations[name]`` is 1..4 from (stable at p-, stable at p+):
    (T, T) -> 1, (F, T) -> 2, (T, F) -> 3, (F, F) -> 4.  ``node_situations``
    gives, per subobject node, the code of the sign pair of
    ``mu(node) - mu(object)`` at p- and p+: (-,-) 1, (+,-) 2, (-,+) 3, (+,+) 4,
    and 0 when the difference vanishes on either side.
    """

    walls: list[WallSpec]
    situations: dict[str, int]
    node_situations: dict[str, dict[str, int]]
    s_minus: set[str]
    s_zero: set[str]
    s_plus: set[str]
    realization_scope: str = "supplied catalog"
    violations: list[str] = field(default_factory=list)

    @property
    def minus_in_zero(self) -> bool:
        return self.s_minus <= self.s_zero

    @property
    def plus_in_zero(self) -> bool:
        return self.s_plus <= self.s_zero

    def to_json(self) -> dict:
        return {
            "realization_scope": self.realization_scope,
            "walls": [w.to_json() for w in self.walls],
            "situations": dict(sorted(self.situations.items())),
            "node_situations": {k: dict(sorted(v.items())) for k, v in sorted(self.node_situations.items())},
            "S_minus": sorted(self.s_minus),
            "S_zero": sorted(self.s_zero),
            "S_plus": sorted(self.s_plus),
            "S_minus_in_S_zero": self.minus_in_zero,
            "S_plus_in_S_zero": self.plus_in_zero,
            "violations": self.violations,
        }


_SITUATION = {(False, False): 1, (True, False): 2, (False, True): 3, (True, True): 4}


def crossing_report(
    p_minus: StabilityParameter,
    p_plus: StabilityParameter,
    p_zero: StabilityParameter,
    catalog,
) -> CrossingReport:
    """Compare stability on both sides of a single actual wall through ``p_zero``.

    Walls are those realized by the catalog.  ``p_zero`` must lie on walls of
    a single locus; the half-segments ``[p_minus, p_zero)`` and
    ``(p_zero, p_plus]`` must meet no wall.
    """
    items = _catalog_items(catalog)
    walls = realized_walls(catalog)
    through = [w for w in walls if wall_value(p_zero, w) == 0]
    if not through:
        raise NotOnWall("p_zero lies on no wall realized by the catalog")
    if not all(_same_locus(through[0], w) for w in through[1:]):
        raise NotAdjacent(
            "p_zero lies on an intersection of distinct walls",
            walls=[str(w) for w in through],
        )
    for side in (p_minus, p_plus):
        for w in walls:
            a, b, c = _segment_quadratic(side, p_zero, w)
            hits = _roots_in(a, b, c, Fraction(0), Fraction(1), closed_hi=False)
            if hits == IDENTICALLY_ZERO or hits:
                raise NotAdjacent(f"segment from {side.to_json()} to p_zero meets wall {w}")

    situations, node_situations, violations = {}, {}, []
    s_minus, s_zero, s_plus = set(), set(), set()
    f_minus, f_zero, f_plus = z_slope_fn(p_minus), z_slope_fn(p_zero), z_slope_fn(p_plus)
    for name, m in items:
        st_minus = bool(is_stable(m, f_minus))
        st_plus = bool(is_stable(m, f_plus))
        if st_minus:
            s_minus.add(name)
        if st_plus:
            s_plus.add(name)
        if is_semistable(m, f_zero):
            s_zero.add(name)
        situations[name] = _SITUATION[(not st_minus, not st_plus)]
        per_node = {}
        for node in m.nodes[1:-1]:
            d_minus = f_minus(node.cls) - f_minus(m.top)
            d_plus = f_plus(node.cls) - f_plus(m.top)
            if d_minus == 0 or d_plus == 0:
                per_node[node.id] = 0
            else:
                per_node[node.id] = _SITUATION[(d_minus > 0, d_plus > 0)]
        node_situations[name] = per_node
    for name in sorted(s_minus - s_zero):
        violations.append(f"{name} is stable at p_minus but not semistable at p_zero")
    for name in sorted(s_plus - s_zero):
        violations.append(f"{name} is stable at p_plus but not semistable at p_zero")
    return CrossingReport(through, situations, node_situations, s_minus, s_zero, s_plus, violations=violations)


# -- quintic worked example --------------------------------------------------


def quintic_ambient(xB=0, xJ=1, xL=1) -> AmbientData:
    """P^1 x (quintic threefold): classes ``(m, n)``, B and J pair with n, L with m."""
    return AmbientData(
        rank=2,
        generators=((1, 0), (0, 1)),
        B=(0, Fraction(xB)),
        J=(0, Fraction(xJ)),
        L=(Fraction(xL), 0),
        H=(1, 1),
        chart=(("xB", (("B", 1),)), ("xJ", (("J", 1),)), ("xL", (("L", 0),))),
    )


def quintic_chart() -> Chart:
    return Chart.for_ambient(quintic_ambient())


def quintic_point(xB, xJ, xL) -> StabilityParameter:
    return StabilityParameter((0, xB), (0, xJ), (xL, 0))


def _det(a, b, c, d):
    return a * d - b * c


def quintic_determinant_form(chi0, m0, n0, e, m, n, xB, xJ, xL) -> Fraction:
    """The wall function written with three 2x2 determinants."""
    return (
        _det(e, m, chi0, m0) * Fraction(xL)
        + _det(e, n, chi0, n0) * Fraction(xJ)
        + _det(m, n, m0, n0) * Fraction(xB) * Fraction(xL)
    )


def quintic_degenerate_factorization(chi0, m0, n0, e, m, n, xB, xJ, xL) -> Fraction:
    """``xL (det(e m; chi0 m0) + det(m n; m0 n0) xB)``, valid when det(e n; chi0 n0) = 0."""
    return Fraction(xL) * (_det(e, m, chi0, m0) + _det(m, n, m0, n0) * Fraction(xB))


def quintic_degenerate_pairs(chi0: int, n0: int) -> list[tuple[int, int]]:
    """``(e, n)`` with ``0 < n < n0`` and ``e n0 - chi0 n = 0``."""
    out = []
    for n in range(1, n0):
        num = chi0 * n
        if num % n0 == 0:
            out.append((num // n0, n))
    return out


def quintic_scenario(xB=0, xJ=1, xL=1):
    """The quintic ambient together with a checker of the determinant identity.

    The checker takes ``(chi0, m0, n0, e, m, n, xB, xJ, xL)`` and returns True
    when the wall function equals the determinant form exactly.
    """
    ambient = quintic_ambient(xB, xJ, xL)

    def check(chi0, m0, n0, e, m, n, xB, xJ, xL) -> bool:
        w = WallSpec(chi0, (m0, n0), e, (m, n))
        q = wall_value(quintic_point(xB, xJ, xL), w)
        return q == quintic_determinant_form(chi0, m0, n0, e, m, n, xB, xJ, xL)

    return ambient, check


# -- plotting slices ----------------------------------------------------------


def slice_grid(
    chart: Chart,
    base: Mapping[str, Fraction],
    x_name: str,
    xs: Sequence[Fraction],
    y_name: str,
    ys: Sequence[Fraction],
    walls: Sequence[WallSpec],
) -> list[list]:
    """Rows ``[x, y, sign_0, sign_1, ...]`` of wall signs over a 2-D grid."""
    rows = [[x_name, y_name] + [f"w{i}" for i in range(len(walls))]]
    for x in xs:
        for y in ys:
            coords = dict(base)
            coords[x_name], coords[y_name] = x, y
            pt = chart.point(coords)
            rows.append([format_rational(x), format_rational(y)] + [wall_sign(pt, w) for w in walls])
    return rows


def default_base(chart: Chart) -> dict:
    return chart.coordinates(chart.base)
