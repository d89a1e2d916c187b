"""Finite lattice models of purely one-dimensional sheaves.

An :class:`ObjectModel` is a finite lattice of subobject nodes, each carrying
a numerical class.  Quotients ``B/A`` of nodes ``A <= B`` have class
``class(B) - class(A)`` and their subobjects are the nodes of the interval
``[A, B]``.  All stability notions (semistability, Harder-Narasimhan and
Jordan-Hoelder filtrations) are computed on intervals of this lattice for a
given slope function.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .charge import CentralCharge, SlopeFn, central_charge, p_slope_fn, slope_comparison_bounds, z_slope_fn
from .charge import StabilityParameter
from .errors import (
    BadBottomOrTop,
    ChargeMismatch,
    ImpureNode,
    InadmissibleQuotient,
    MalformedInput,
    NonModular,
    NonMonotone,
    NonUniqueMaximalDestabilizer,
    NotALattice,
    NotPure,
    NotSemistable,
    SaturationMismatch,
    ZeroImaginaryPart,
)
from .lattice import AmbientData, NumClass, format_rational, pair

BOTTOM = "0"
TOP = "1"


@dataclass(frozen=True)
class SubobjectNode:
    id: str
    cls: NumClass
    saturated: bool | None = None


class ObjectModel:
    """A numerical class together with a finite lattice of subobjects.

    ``nodes`` lists the proper nonzero subobjects; the bottom (id ``"0"``,
    zero class) and top (id ``"1"``, class ``top``) are added implicitly.
    ``order`` holds pairs ``(a, b)`` meaning ``a <= b``; the reflexive
    transitive closure is taken.  Construction fails with ``NotALattice``
    when the closure is not antisymmetric or some pair lacks a join or meet.
    Class-level invariants are checked separately by :func:`validate_model`.
    """

    def __init__(
        self,
        top: NumClass,
        nodes: Iterable[SubobjectNode] = (),
        order: Iterable[tuple[str, str]] = (),
        pure: bool = True,
        name: str = "",
    ):
        self.top = top
        self.pure = pure
        self.name = name
        zero = NumClass(0, (0,) * len(top.beta))
        self.nodes: list[SubobjectNode] = [SubobjectNode(BOTTOM, zero, None)]
        for node in nodes:
            if node.id in (BOTTOM, TOP):
                raise BadBottomOrTop(f"node id {node.id!r} is reserved for bottom/top")
            self.nodes.append(node)
        self.nodes.append(SubobjectNode(TOP, top, None))
        self.index = {node.id: i for i, node in enumerate(self.nodes)}
        if len(self.index) != len(self.nodes):
            raise MalformedInput("duplicate node ids")
        self.order_pairs = [(str(a), str(b)) for a, b in order]
        self._build_order()
        self._join: dict[tuple[int, int], int] = {}
        self._meet: dict[tuple[int, int], int] = {}
        self._check_lattice()

    # -- order structure -------------------------------------------------

    def _build_order(self):
        n = len(self.nodes)
        above = [1 << i for i in range(n)]
        above[0] = (1 << n) - 1
        for i in range(n):
            above[i] |= 1 << (n - 1)
        for a, b in self.order_pairs:
            try:
                ia, ib = self.index[a], self.index[b]
            except KeyError as exc:
                raise MalformedInput(f"order mentions unknown node {exc}") from exc
            above[ia] |= 1 << ib
        # transitive closure
        changed = True
        while changed:
            changed = False
            for i in range(n):
                acc = above[i]
                bits = acc
                while bits:
                    low = bits & -bits
                    j = low.bit_length() - 1
                    acc |= above[j]
                    bits ^= low
                if acc != above[i]:
                    above[i] = acc
                    changed = True
        self._above = above
        self._below = [sum(1 << j for j in range(n) if above[j] >> i & 1) for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                if above[i] >> j & 1 and above[j] >> i & 1:
                    raise NotALattice(
                        f"{self.nodes[i].id} and {self.nodes[j].id} are mutually comparable",
                        nodes=[self.nodes[i].id, self.nodes[j].id],
                    )

    def _check_lattice(self):
        n = len(self.nodes)
        for i in range(n):
            for j in range(i + 1, n):
                self.join_index(i, j)
                self.meet_index(i, j)

    def _extremal(self, mask: int, table: list[int], i: int, j: int, what: str) -> int:
        bits = mask
        while bits:
            low = bits & -bits
            u = low.bit_length() - 1
            if table[u] & mask == mask:
                return u
            bits ^= low
        raise NotALattice(
            f"{self.nodes[i].id} and {self.nodes[j].id} have no {what}",
            nodes=[self.nodes[i].id, self.nodes[j].id],
        )

    def join_index(self, i: int, j: int) -> int:
        key = (min(i, j), max(i, j))
        if key not in self._join:
            ub = self._above[i] & self._above[j]
            self._join[key] = self._extremal(ub, self._above, i, j, "join")
        return self._join[key]

    def meet_index(self, i: int, j: int) -> int:
        key = (min(i, j), max(i, j))
        if key not in self._meet:
            lb = self._below[i] & self._below[j]
            self._meet[key] = self._extremal(lb, self._below, i, j, "meet")
        return self._meet[key]

    def leq_index(self, i: int, j: int) -> bool:
        return bool(self._above[i] >> j & 1)

    def leq(self, a: str, b: str) -> bool:
        return self.leq_index(self.index[a], self.index[b])

    def join(self, a: str, b: str) -> str:
        return self.nodes[self.join_index(self.index[a], self.index[b])].id

    def meet(self, a: str, b: str) -> str:
        return self.nodes[self.meet_index(self.index[a], self.index[b])].id

    @property
    def bottom_index(self) -> int:
        return 0

    @property
    def top_index(self) -> int:
        return len(self.nodes) - 1

    def __len__(self) -> int:
        return len(self.nodes)

    def cls(self, i: int) -> NumClass:
        return self.nodes[i].cls

    def interval(self, lo: int, hi: int) -> list[int]:
        """Indices ``c`` with ``lo <= c <= hi`` in node order."""
        mask = self._above[lo] & self._below[hi]
        return [c for c in range(len(self.nodes)) if mask >> c & 1]

    def quotient_class(self, lo: int, hi: int) -> NumClass:
        return self.cls(hi) - self.cls(lo)

    def quotient_pure_index(self, i: int, hi: int | None = None) -> bool:
        """Whether ``hi / i`` has no nonzero subobject with zero curve class."""
        hi = self.top_index if hi is None else hi
        beta = self.cls(i).beta
        return all(self.cls(c).beta != beta for c in self.interval(i, hi) if c != i)

    def interval_is_pure(self, lo: int, hi: int) -> bool:
        return self.quotient_pure_index(lo, hi)

    def saturated_index(self, i: int) -> bool:
        """Declared saturation flag; defaults to quotient purity when undeclared."""
        flag = self.nodes[i].saturated
        return self.quotient_pure_index(i) if flag is None else flag

    def saturation_index(self, i: int) -> int:
        """Largest node above ``i`` with the same curve class."""
        beta = self.cls(i).beta
        same = [c for c in self.interval(i, self.top_index) if self.cls(c).beta == beta]
        return max(same, key=lambda c: bin(self._below[c]).count("1"))

    def ids(self, indices: Iterable[int]) -> list[str]:
        return [self.nodes[i].id for i in indices]

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {
            "top": self.top.to_json(),
            "pure": self.pure,
            "nodes": [
                {
                    "id": node.id,
                    "chi": node.cls.chi,
                    "beta": list(node.cls.beta),
                    "saturated": self.saturated_index(i),
                }
                for i, node in enumerate(self.nodes)
                if node.id not in (BOTTOM, TOP)
            ],
            "order": [list(p) for p in self.order_pairs],
        }

    @classmethod
    def from_json(cls, doc: dict, name: str = "") -> ObjectModel:
        try:
            top = NumClass.from_json(doc["top"])
            nodes = [
                SubobjectNode(
                    str(d["id"]),
                    NumClass.from_json(d),
                    d.get("saturated"),
                )
                for d in doc.get("nodes", [])
            ]
            order = [(str(a), str(b)) for a, b in doc.get("order", [])]
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInput(f"malformed model document: {exc}") from exc
        return cls(top, nodes, order, pure=bool(doc.get("pure", True)), name=name)

    def __repr__(self) -> str:
        return f"ObjectModel({self.name or self.top}, {len(self.nodes)} nodes)"


def chain_model(classes: Sequence[NumClass], name: str = "") -> ObjectModel:
    """Totally ordered model ``0 < n1 < ... < top`` from cumulative classes.

    The last class is the top; the others become nodes ``"a1"``, ``"a2"``, ...
    """
    *inner, top = classes
    nodes = [SubobjectNode(f"a{i + 1}", c) for i, c in enumerate(inner)]
    ids = [BOTTOM] + [n.id for n in nodes] + [TOP]
    return ObjectModel(top, nodes, list(zip(ids, ids[1:])), name=name)


# -- validation -----------------------------------------------------------


def validate_model(m: ObjectModel) -> ObjectModel:
    """Check class-level invariants: bottom/top, monotonicity, modularity, purity."""
    if any(m.cls(0).beta) or m.cls(0).chi != 0:
        raise BadBottomOrTop("bottom must carry the zero class")
    if not m.top.is_admissible:
        raise BadBottomOrTop(f"top class {m.top} is not admissible")
    k = len(m.top.beta)
    for node in m.nodes:
        if len(node.cls.beta) != k:
            raise MalformedInput(f"node {node.id} has class of the wrong length")
    n = len(m)
    for i in range(n):
        for j in range(n):
            if i != j and m.leq_index(i, j):
                diff = m.quotient_class(i, j)
                if not diff.is_effective:
                    raise NonMonotone(
                        f"{m.nodes[i].id} <= {m.nodes[j].id} but the curve class decreases",
                        nodes=[m.nodes[i].id, m.nodes[j].id],
                    )
                if not diff.is_admissible:
                    raise InadmissibleQuotient(
                        f"{m.nodes[j].id}/{m.nodes[i].id} has class {diff}",
                        nodes=[m.nodes[i].id, m.nodes[j].id],
                    )
    for i in range(n):
        for j in range(i + 1, n):
            lhs = m.cls(m.join_index(i, j)) + m.cls(m.meet_index(i, j))
            if lhs != m.cls(i) + m.cls(j):
                raise NonModular(
                    f"classes of {m.nodes[i].id}, {m.nodes[j].id} are not modular",
                    nodes=[m.nodes[i].id, m.nodes[j].id],
                )
    if m.pure:
        for i in range(1, n):
            if not any(m.cls(i).beta):
                raise ImpureNode(f"node {m.nodes[i].id} has zero curve class", node=m.nodes[i].id)
    for i in range(1, n - 1):
        flag = m.nodes[i].saturated
        if flag is not None and flag != m.quotient_pure_index(i):
            raise SaturationMismatch(
                f"node {m.nodes[i].id} declared saturated={flag}", node=m.nodes[i].id
            )
    return m


# -- semistability ---------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: str | None = None

    def __bool__(self) -> bool:
        return self.holds


def _require_pure(m: ObjectModel):
    if not m.pure:
        raise NotPure("stability is defined only for pure models")


def _interval_verdict(m: ObjectModel, lo: int, hi: int, slope_fn: SlopeFn, strict: bool) -> Verdict:
    if not m.interval_is_pure(lo, hi):
        return Verdict(False, None)
    mu = slope_fn(m.quotient_class(lo, hi))
    for c in m.interval(lo, hi):
        if c in (lo, hi):
            continue
        mu_c = slope_fn(m.quotient_class(lo, c))
        if mu_c > mu or (strict and mu_c == mu):
            return Verdict(False, m.nodes[c].id)
    return Verdict(True)


def is_semistable(m: ObjectModel, slope_fn: SlopeFn) -> Verdict:
    """No proper nonzero subobject has larger slope than the whole."""
    _require_pure(m)
    return _interval_verdict(m, m.bottom_index, m.top_index, slope_fn, strict=False)


def is_stable(m: ObjectModel, slope_fn: SlopeFn) -> Verdict:
    """Every proper nonzero subobject has strictly smaller slope."""
    _require_pure(m)
    return _interval_verdict(m, m.bottom_index, m.top_index, slope_fn, strict=True)


@dataclass(frozen=True)
class Battery:
    """Four equivalent formulations of (semi)stability."""

    all_subobjects: bool
    saturated_subobjects: bool
    all_quotients: bool
    pure_quotients: bool

    @property
    def consistent(self) -> bool:
        return len({self.all_subobjects, self.saturated_subobjects, self.all_quotients, self.pure_quotients}) == 1


def stability_test_battery(m: ObjectModel, slope_fn: SlopeFn, strict: bool = False) -> Battery:
    """Evaluate subobject tests (all / saturated) and quotient tests (all 1-dim / pure)."""
    _require_pure(m)
    bot, top = m.bottom_index, m.top_index
    mu = slope_fn(m.top)
    proper = [c for c in range(len(m)) if c not in (bot, top)]

    def sub_ok(c):
        s = slope_fn(m.cls(c))
        return s < mu if strict else s <= mu

    def quot_ok(c):
        s = slope_fn(m.quotient_class(c, top))
        return mu < s if strict else mu <= s

    one_dim = [c for c in proper if any(m.quotient_class(c, top).beta)]
    return Battery(
        all(sub_ok(c) for c in proper),
        all(sub_ok(c) for c in proper if m.saturated_index(c)),
        all(quot_ok(c) for c in one_dim),
        all(quot_ok(c) for c in proper if m.saturated_index(c)),
    )


def max_destabilizing_subobject(m: ObjectModel, slope_fn: SlopeFn, lo: int | None = None, hi: int | None = None) -> str:
    """The largest node of maximal slope in the interval ``(lo, hi]``.

    Slopes are those of ``c / lo``.  Returns ``hi`` itself when the interval
    is semistable.
    """
    lo = m.bottom_index if lo is None else lo
    hi = m.top_index if hi is None else hi
    return m.nodes[_max_destabilizer(m, slope_fn, lo, hi)].id


def _max_destabilizer(m: ObjectModel, slope_fn: SlopeFn, lo: int, hi: int) -> int:
    cands = [c for c in m.interval(lo, hi) if c != lo]
    slopes = {c: slope_fn(m.quotient_class(lo, c)) for c in cands}
    mu_max = max(slopes.values())
    attaining = [c for c in cands if slopes[c] == mu_max]
    mask = sum(1 << c for c in attaining)
    top_of = [g for g in attaining if m._below[g] & mask == mask]
    if not top_of:
        raise NonUniqueMaximalDestabilizer(
            f"max-slope nodes {m.ids(attaining)} have no common maximum of the same slope",
            nodes=m.ids(attaining),
        )
    g = top_of[0]
    assert _interval_verdict(m, lo, g, slope_fn, strict=False) or not m.interval_is_pure(lo, g)
    return g


@dataclass(frozen=True)
class HNResult:
    chain: tuple[str, ...]
    factor_classes: tuple[NumClass, ...]
    slopes: tuple

    def __len__(self) -> int:
        return len(self.factor_classes)

    def to_json(self) -> dict:
        return {
            "chain": list(self.chain),
            "factor_classes": [c.to_json() for c in self.factor_classes],
            "slopes": [_slope_json(s) for s in self.slopes],
        }


def _slope_json(s):
    return "inf" if s == math.inf else format_rational(s)


def hn_filtration(m: ObjectModel, slope_fn: SlopeFn) -> HNResult:
    """Harder-Narasimhan filtration by iterating the maximal destabilizer on quotients."""
    _require_pure(m)
    chain = [m.bottom_index]
    while chain[-1] != m.top_index:
        chain.append(_max_destabilizer(m, slope_fn, chain[-1], m.top_index))
    factors = tuple(m.quotient_class(a, b) for a, b in zip(chain, chain[1:]))
    slopes = tuple(slope_fn(f) for f in factors)
    return HNResult(tuple(m.ids(chain)), factors, slopes)


def mu_max(m: ObjectModel, slope_fn: SlopeFn):
    return hn_filtration(m, slope_fn).slopes[0]


def mu_min(m: ObjectModel, slope_fn: SlopeFn):
    return hn_filtration(m, slope_fn).slopes[-1]


def hom_vanishing_criterion(m_f: ObjectModel, m_g: ObjectModel, slope_fn: SlopeFn) -> bool:
    """Slope hypothesis ``mu_min(F) > mu_max(G)`` under which ``Hom(F, G) = 0``."""
    return mu_min(m_f, slope_fn) > mu_max(m_g, slope_fn)


# -- Jordan-Hoelder -------------------------------------------------------


@dataclass(frozen=True)
class GradedClass:
    """Multiset of Jordan-Hoelder factor classes, stored sorted."""

    factors: tuple[NumClass, ...]
    chain: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(sorted(self.factors)))

    @property
    def counts(self) -> Counter:
        return Counter(self.factors)

    def total(self) -> NumClass:
        out = self.factors[0]
        for f in self.factors[1:]:
            out = out + f
        return out

    def to_json(self) -> dict:
        return {"factors": [f.to_json() for f in self.factors], "chain": list(self.chain)}


def jh_filtration(m: ObjectModel, slope_fn: SlopeFn) -> GradedClass:
    """One composition series with stable factors of equal slope.

    Walks down from the top, each time stepping to a maximal proper node of
    the common slope (smallest id on ties).
    """
    if not is_semistable(m, slope_fn):
        raise NotSemistable("Jordan-Hoelder filtrations need a semistable model")
    mu = slope_fn(m.top)
    bot = m.bottom_index
    current = m.top_index
    chain = [current]
    factors = []
    while current != bot:
        cands = [c for c in m.interval(bot, current) if c not in (bot, current) and slope_fn(m.cls(c)) == mu]
        maximal = [c for c in cands if not any(d != c and m.leq_index(c, d) for d in cands)]
        nxt = min(maximal, key=lambda c: m.nodes[c].id) if maximal else bot
        factors.append(m.quotient_class(nxt, current))
        current = nxt
        chain.append(current)
    return GradedClass(tuple(factors), tuple(m.ids(reversed(chain))))


def s_equivalent(m1: ObjectModel, m2: ObjectModel, slope_fn: SlopeFn) -> bool:
    """Equality of Jordan-Hoelder factor multisets."""
    return jh_filtration(m1, slope_fn).factors == jh_filtration(m2, slope_fn).factors


# -- h0 bounds ------------------------------------------------------------


def _clamped(h_beta: Fraction, mu: Fraction) -> Fraction:
    return h_beta * max(Fraction(0), mu + Fraction(1, 2) * h_beta * (h_beta + 1) - 1)


def h0_bound_p(m: ObjectModel, ambient: AmbientData) -> Fraction:
    """``(H.beta) [mu_max^P + (H.beta)(H.beta + 1)/2 - 1]_+`` for a pure model."""
    h_beta = pair(ambient, "H", m.top.beta)
    return _clamped(h_beta, mu_max(m, p_slope_fn(ambient)))


@dataclass(frozen=True)
class ZBound:
    """h0 bound through the Z-slope with its constants.

    ``mu_p_bound = a1 * Re c / (-Im c) + a0`` dominates ``mu_max^P`` of every
    Z-semistable model of charge ``c``.
    """

    value: Fraction
    a1: Fraction
    a0: Fraction
    mu_p_bound: Fraction
    derivation: str

    def to_json(self) -> dict:
        return {
            "value": format_rational(self.value),
            "a1": format_rational(self.a1),
            "a0": format_rational(self.a0),
            "mu_p_bound": format_rational(self.mu_p_bound),
            "derivation": self.derivation,
        }


def h0_bound_z(m: ObjectModel, ambient: AmbientData, p: StabilityParameter, c: CentralCharge) -> ZBound:
    """h0 bound for a Z-semistable model of charge ``c``.

    A subobject G has ``mu_P(G) = (mu_Z(G) - s(G)) / r(G)`` with ``r, s`` in the
    generator ranges; since ``mu_Z(G) <= mu_Z(F)`` the numerator is at most
    ``mu_Z(F) - s_min``, divided by ``r_min`` if that is nonnegative and by
    ``r_max`` otherwise.
    """
    if c.im == 0:
        raise ZeroImaginaryPart("the Z-slope bound needs Im c < 0")
    if central_charge(p, m.top) != c:
        raise ChargeMismatch(f"model has charge {central_charge(p, m.top)}, not {c}")
    if not is_semistable(m, z_slope_fn(p)):
        raise NotSemistable("h0_bound_z needs a Z-semistable model")
    bounds = slope_comparison_bounds(ambient, p)
    mu_z = c.re / (-c.im)
    if mu_z - bounds.s_min >= 0:
        a1 = 1 / bounds.r_min
        a0 = -bounds.s_min / bounds.r_min
        how = "a1 = 1/r_min, a0 = -s_min/r_min (mu_Z - s_min >= 0)"
    else:
        a1 = 1 / bounds.r_max
        a0 = -bounds.s_min / bounds.r_max
        how = "a1 = 1/r_max, a0 = -s_min/r_max (mu_Z - s_min < 0)"
    mu_p_bound = a1 * mu_z + a0
    h_beta = pair(ambient, "H", m.top.beta)
    derivation = (
        f"r in [{bounds.r_min}, {bounds.r_max}], s in [{bounds.s_min}, {bounds.s_max}]; {how}"
    )
    return ZBound(_clamped(h_beta, mu_p_bound), a1, a0, mu_p_bound, derivation)
