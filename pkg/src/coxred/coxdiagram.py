"""Coxeter diagrams: parsing, Gram matrices, finite/affine recognition,
presentations, parabolic subdiagrams and Euler characteristics."""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Union

from coxred import exact
from coxred.errors import LabelError, ParseError
from coxred.numberfield import MultiQuadElement, format_multiquad, parse_multiquad

DELTA_3 = "[5,3,3,5]"
DELTA_2 = "[5,3,3,4]"
PRESETS = {"delta3": DELTA_3, "delta2": DELTA_2}

SUPPORTED_ANGLES = (3, 4, 5, 6)


@dataclass(frozen=True)
class Angle:
    m: int

    def __post_init__(self):
        if self.m < 3:
            raise LabelError(f"angle label {self.m} < 3")
        if self.m not in SUPPORTED_ANGLES:
            raise LabelError(f"label {self.m} needs -2cos(pi/{self.m}) outside Q(sqrt2, sqrt3, sqrt5)")

    def text(self) -> str:
        return str(self.m)


@dataclass(frozen=True)
class Infinity:
    def text(self) -> str:
        return "inf"


@dataclass(frozen=True)
class GramValue:
    value: MultiQuadElement

    def __post_init__(self):
        if not self.value < -2:
            raise LabelError(f"Gram value {self.value} must be < -2")

    def text(self) -> str:
        return "g=" + format_multiquad(self.value).replace(" ", "")


EdgeLabel = Union[Angle, Infinity, GramValue]


def angle_entry(m: int) -> MultiQuadElement:
    """-2 cos(pi/m) for m in 2..6."""
    values = {
        2: MultiQuadElement(),
        3: MultiQuadElement.rational(-1),
        4: -MultiQuadElement.sqrt(2),
        5: MultiQuadElement.rational(Fraction(-1, 2)) - MultiQuadElement.sqrt(5, Fraction(1, 2)),
        6: -MultiQuadElement.sqrt(3),
    }
    return values[m]


def label_entry(label: Optional[EdgeLabel]) -> MultiQuadElement:
    if label is None:
        return MultiQuadElement()
    if isinstance(label, Angle):
        return angle_entry(label.m)
    if isinstance(label, Infinity):
        return MultiQuadElement.rational(-2)
    return label.value


@dataclass(frozen=True)
class CoxeterDiagram:
    """Nodes ``1..node_count``; absent pairs carry the orthogonal label 2."""

    node_count: int
    edges: tuple = ()  # sorted tuple of ((i, j), label) with i < j

    def __post_init__(self):
        if self.node_count < 0:
            raise ValueError("node_count must be non-negative")
        cleaned = {}
        for (i, j), label in (self.edges.items() if isinstance(self.edges, dict) else self.edges):
            if i == j:
                raise ValueError(f"self-edge at node {i}")
            if not (1 <= i <= self.node_count and 1 <= j <= self.node_count):
                raise ValueError(f"edge {i}-{j} outside 1..{self.node_count}")
            cleaned[(min(i, j), max(i, j))] = label
        object.__setattr__(self, "edges", tuple(sorted(cleaned.items(), key=lambda kv: kv[0])))

    @property
    def edge_map(self) -> dict:
        return dict(self.edges)

    @property
    def nodes(self) -> range:
        return range(1, self.node_count + 1)

    def label(self, i: int, j: int) -> Optional[EdgeLabel]:
        return self.edge_map.get((min(i, j), max(i, j)))

    def coxeter_exponent(self, i: int, j: int) -> Optional[int]:
        """m_ij, or None when the product r_i r_j has infinite order."""
        lab = self.label(i, j)
        if lab is None:
            return 2
        if isinstance(lab, Angle):
            return lab.m
        return None

    def neighbours(self, i: int) -> list[int]:
        return [j for j in self.nodes if j != i and self.label(i, j) is not None]

    def components(self) -> list[tuple[int, ...]]:
        seen, comps = set(), []
        for start in self.nodes:
            if start in seen:
                continue
            stack, comp = [start], []
            seen.add(start)
            while stack:
                u = stack.pop()
                comp.append(u)
                for v in self.neighbours(u):
                    if v not in seen:
                        seen.add(v)
                        stack.append(v)
            comps.append(tuple(sorted(comp)))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def induced(self, subset: Iterable[int]) -> "CoxeterDiagram":
        """Subdiagram on ``subset``, renumbered 1..k in increasing order."""
        subset = sorted(subset)
        index = {v: k + 1 for k, v in enumerate(subset)}
        edges = {(index[i], index[j]): lab for (i, j), lab in self.edges if i in index and j in index}
        return CoxeterDiagram(len(subset), edges)

    def relabel(self, perm: dict[int, int]) -> "CoxeterDiagram":
        """Diagram with node ``i`` renamed ``perm[i]``."""
        return CoxeterDiagram(self.node_count, {(perm[i], perm[j]): lab for (i, j), lab in self.edges})

    def text(self) -> str:
        if self.node_count >= 1 and all(isinstance(l, Angle) for _, l in self.edges):
            path = [(i, i + 1) for i in range(1, self.node_count)]
            keys = [k for k, _ in self.edges]
            if set(keys) <= set(path):
                labels = [self.label(i, j) for i, j in path]
                if self.node_count >= 2:
                    return "[" + ",".join("2" if l is None else l.text() for l in labels) + "]"
        parts = [f"nodes={self.node_count}"]
        parts += [f"{i}-{j}:{lab.text()}" for (i, j), lab in self.edges]
        return "; ".join(parts)


# ---------------------------------------------------------------------------
# parsing

_BRACKET = re.compile(r"\s*\[(.*)\]\s*$", re.S)
_NODES = re.compile(r"\s*nodes\s*=\s*(\d+)\s*")
_EDGE = re.compile(r"\s*(\d+)\s*-\s*(\d+)\s*:\s*")


def parse_diagram(text: str) -> CoxeterDiagram:
    """Parse ``[a,b,...]`` path shorthand or ``nodes=N; i-j:label; ...``."""
    m = _BRACKET.match(text)
    if m:
        body = m.group(1)
        offset = m.start(1)
        if not body.strip():
            return CoxeterDiagram(1)
        edges = {}
        pos = 0
        for k, tok in enumerate(body.split(",")):
            stripped = tok.strip()
            where = offset + pos + (len(tok) - len(tok.lstrip()))
            if not stripped.isdigit():
                raise ParseError(f"expected integer label, got {stripped!r}", where)
            label = int(stripped)
            if label < 2:
                raise LabelError(f"bracket label {label} < 2 at position {where}")
            if label > 2:
                edges[(k + 1, k + 2)] = Angle(label)
            pos += len(tok) + 1
        return CoxeterDiagram(len(body.split(",")) + 1, edges)

    m = _NODES.match(text)
    if not m:
        raise ParseError("expected '[' or 'nodes='", 0)
    n = int(m.group(1))
    if n < 1:
        raise ParseError("diagram needs at least one node", m.start(1))
    pos = m.end()
    edges = {}
    while pos < len(text):
        if text[pos] != ";":
            raise ParseError(f"expected ';', got {text[pos]!r}", pos)
        pos += 1
        end = text.find(";", pos)
        end = len(text) if end < 0 else end
        chunk = text[pos:end]
        if not chunk.strip():
            pos = end
            continue
        em = _EDGE.match(chunk)
        if not em:
            raise ParseError("expected edge 'i-j:label'", pos)
        i, j = int(em.group(1)), int(em.group(2))
        for node, grp in ((i, 1), (j, 2)):
            if not 1 <= node <= n:
                raise ParseError(f"node {node} outside 1..{n}", pos + em.start(grp))
        if i == j:
            raise ParseError(f"self-edge at node {i}", pos + em.start(1))
        raw = chunk[em.end():].strip()
        lpos = pos + em.end()
        if raw == "inf":
            label = Infinity()
        elif raw.startswith("g="):
            value = parse_multiquad(raw[2:], lpos + 2)
            label = GramValue(value)
        elif raw.isdigit():
            mval = int(raw)
            if mval < 2:
                raise LabelError(f"edge label {mval} < 2 at position {lpos}")
            label = None if mval == 2 else Angle(mval)
        else:
            raise ParseError(f"bad edge label {raw!r}", lpos)
        key = (min(i, j), max(i, j))
        if key in edges:
            raise ParseError(f"duplicate edge {i}-{j}", pos)
        edges[key] = label
        pos = end
    return CoxeterDiagram(n, {k: v for k, v in edges.items() if v is not None})


def as_diagram(d) -> CoxeterDiagram:
    if isinstance(d, CoxeterDiagram):
        return d
    return parse_diagram(PRESETS.get(d, d))


# ---------------------------------------------------------------------------
# Gram matrix


def gram_matrix(d: CoxeterDiagram) -> list[list[MultiQuadElement]]:
    n = d.node_count
    two = MultiQuadElement.rational(2)
    return [[two if i == j else label_entry(d.label(i, j)) for j in range(1, n + 1)] for i in range(1, n + 1)]


# ---------------------------------------------------------------------------
# finite and affine types


@dataclass(frozen=True)
class FiniteComponent:
    name: str
    order: int
    nodes: tuple[int, ...]


@dataclass(frozen=True)
class FiniteTypeReport:
    components: tuple[FiniteComponent, ...]
    total_order: int

    @property
    def name(self) -> str:
        return " x ".join(c.name for c in self.components) or "trivial"


def _type_order(family: str, n: int) -> int:
    if family == "A":
        return math.factorial(n + 1)
    if family == "B":
        return 2 ** n * math.factorial(n)
    if family == "D":
        return 2 ** (n - 1) * math.factorial(n)
    raise ValueError(family)


_EXCEPTIONAL = {"E6": 51840, "E7": 2903040, "E8": 696729600, "F4": 1152, "H3": 120, "H4": 14400}


def _classify_component(d: CoxeterDiagram) -> Optional[tuple[str, int]]:
    """Finite type of a connected diagram, or None."""
    n = d.node_count
    if n == 1:
        return "A1", 2
    labels = []
    for _, lab in d.edges:
        if not isinstance(lab, Angle):
            return None
        labels.append(lab.m)
    if len(d.edges) != n - 1:  # cycles are never finite
        return None
    if n == 2:
        m = labels[0]
        names = {3: "A2", 4: "B2"}
        return names.get(m, f"I2({m})"), 2 * m
    degree = {v: len(d.neighbours(v)) for v in d.nodes}
    if max(degree.values()) > 3:
        return None
    branch = [v for v, k in degree.items() if k == 3]
    if len(branch) > 1:
        return None
    if branch:
        if any(m != 3 for m in labels):
            return None
        centre = branch[0]
        arms = []
        for start in d.neighbours(centre):
            length, prev, cur = 1, centre, start
            while True:
                nxt = [v for v in d.neighbours(cur) if v != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                length += 1
            arms.append(length)
        arms.sort()
        if arms[:2] == [1, 1]:
            return f"D{n}", _type_order("D", n)
        named = {(1, 2, 2): "E6", (1, 2, 3): "E7", (1, 2, 4): "E8"}
        name = named.get(tuple(arms))
        return (name, _EXCEPTIONAL[name]) if name else None
    # path: read labels from one end
    end = next(v for v, k in degree.items() if k == 1)
    seq, prev, cur = [], None, end
    while True:
        nxt = [v for v in d.neighbours(cur) if v != prev]
        if not nxt:
            break
        seq.append(d.label(cur, nxt[0]).m)
        prev, cur = cur, nxt[0]
    if all(m == 3 for m in seq):
        return f"A{n}", _type_order("A", n)
    specials = [k for k, m in enumerate(seq) if m != 3]
    if len(specials) != 1:
        return None
    k = specials[0]
    m = seq[k]
    at_end = k in (0, len(seq) - 1)
    if m == 4 and at_end:
        return f"B{n}", _type_order("B", n)
    if m == 4 and n == 4 and k == 1:
        return "F4", _EXCEPTIONAL["F4"]
    if m == 5 and at_end and n in (3, 4):
        return f"H{n}", _EXCEPTIONAL[f"H{n}"]
    return None


def finite_type(d: CoxeterDiagram) -> Optional[FiniteTypeReport]:
    """Recognize every component as finite type; None if any is not."""
    comps = []
    total = 1
    for nodes in d.components():
        res = _classify_component(d.induced(nodes))
        if res is None:
            return None
        comps.append(FiniteComponent(res[0], res[1], nodes))
        total *= res[1]
    return FiniteTypeReport(tuple(comps), total)


def is_affine_component(d: CoxeterDiagram) -> bool:
    """Connected diagram with positive semidefinite singular Gram matrix."""
    if not d.is_connected() or d.node_count == 0:
        return False
    pos, neg, zero = exact.signature(gram_matrix(d))
    return neg == 0 and zero == 1


def affine_type(d: CoxeterDiagram) -> list[bool]:
    """Affine verdict per connected component (in component order)."""
    return [is_affine_component(d.induced(c)) for c in d.components()]


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class GroupPresentation:
    """Generators ``1..generator_count``; relators are tuples of signed
    generator indices (negative means inverse).  ``origin`` maps each
    generator back to the index it had before a Tietze simplification."""

    generator_count: int
    relators: tuple = ()
    origin: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        rels = []
        for r in self.relators:
            r = tuple(r)
            for x in r:
                if x == 0 or abs(x) > self.generator_count:
                    raise ValueError(f"letter {x} out of range")
            rels.append(r)
        object.__setattr__(self, "relators", tuple(rels))

    def to_json(self) -> dict:
        return {"generators": self.generator_count, "relators": [list(r) for r in self.relators]}

    @property
    def total_length(self) -> int:
        return sum(len(r) for r in self.relators)


def coxeter_presentation(d: CoxeterDiagram) -> GroupPresentation:
    rels = [(i, i) for i in d.nodes]
    for i, j in itertools.combinations(d.nodes, 2):
        m = d.coxeter_exponent(i, j)
        if m is not None:
            rels.append((i, j) * m)
    return GroupPresentation(d.node_count, tuple(rels))


# ---------------------------------------------------------------------------
# parabolic subdiagrams and Euler characteristic


def parabolic_subdiagrams(d: CoxeterDiagram, corank: int) -> list[tuple[tuple[int, ...], CoxeterDiagram]]:
    if not 0 <= corank <= d.node_count:
        raise ValueError(f"corank {corank} outside 0..{d.node_count}")
    size = d.node_count - corank
    return [(s, d.induced(s)) for s in itertools.combinations(d.nodes, size)]


def _subset_order(d: CoxeterDiagram, subset) -> Optional[int]:
    rep = finite_type(d.induced(subset))
    return None if rep is None else rep.total_order


def euler_characteristic(d: CoxeterDiagram) -> Fraction:
    """Sum of (-1)^|S| / |W_S| over node sets S spanning a finite subgroup.

    Finite subsets are closed under taking subsets, so the search only
    extends sets that are themselves finite.
    """
    total = Fraction(0)
    nodes = list(d.nodes)

    def extend(subset: tuple, start: int):
        nonlocal total
        order = _subset_order(d, subset) if subset else 1
        if order is None:
            return
        total += Fraction((-1) ** len(subset), order)
        for k in range(start, len(nodes)):
            extend(subset + (nodes[k],), k + 1)

    extend((), 0)
    return total


def euler_characteristic_bruteforce(d: CoxeterDiagram) -> Fraction:
    total = Fraction(0)
    for size in range(d.node_count + 1):
        for subset in itertools.combinations(d.nodes, size):
            order = _subset_order(d, subset) if subset else 1
            if order is not None:
                total += Fraction((-1) ** size, order)
    return total

