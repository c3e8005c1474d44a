"""Weight systems on a quotient poset and the automorphisms they induce.

A weight system assigns a central unit to every strictly comparable pair
of classes.  Systems satisfying the chain condition

    c[x,y] = c[x,z] * c[z,y]   for every x < z < y

correspond exactly to the automorphisms of the incidence algebra that fix
every class-diagonal function and scale each cross-class block; those
automorphisms form an abelian group under composition, mirrored here by
pointwise multiplication of weights.

Coboundary systems c[x,y] = v[x]^-1 v[y] for a vertex potential v are the
ones induced by conjugation with a unit.  Whether a system is a coboundary
is decided on the comparability graph: propagate a potential along a
spanning tree and compare on the remaining edges, or equivalently test all
fundamental cycle weights for one.  The decomposition splits any valid
system uniquely into a tree-trivial factor times a coboundary factor.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .coeff_rings import parse_ring_spec
from .comparability import (
    ComparabilityGraph,
    FundamentalCycle,
    cycle_weight,
    fundamental_cycles,
    spanning_tree,
)
from .incidence_algebra import IncidenceFunction


class WeightSystemError(ValueError):
    """Totality, centrality, carrier, or chain-condition violations."""


class WeightSystem:
    """Total assignment of central units to the strict class pairs.

    Construction enforces totality and central-unit values; the chain
    condition is checked separately via :meth:`violations`, so invalid
    candidates can exist as objects (the oracle filters them, the CLI
    reports them).
    """

    __slots__ = ("poset", "ring", "values", "_key")

    def __init__(self, poset, ring, values):
        norm = {}
        for (x, y), v in values.items():
            pair = (poset.rep(x), poset.rep(y))
            if not poset.lt(pair[0], pair[1]):
                raise WeightSystemError(f"pair ({x}, {y}) is not strictly comparable")
            if pair in norm:
                raise WeightSystemError(f"duplicate weight for class pair {pair}")
            ring.check(v)
            if not ring.is_central_unit(v):
                raise WeightSystemError(
                    f"value {ring.format_element(v)} at {pair} is not a central unit of {ring}"
                )
            norm[pair] = v
        missing = [p for p in poset.strict_pairs() if p not in norm]
        if missing:
            raise WeightSystemError(f"missing weights for class pairs {missing}")
        self.poset = poset
        self.ring = ring
        self.values = norm
        self._key = None

    def value(self, x, y):
        pair = (self.poset.rep(x), self.poset.rep(y))
        try:
            return self.values[pair]
        except KeyError:
            raise WeightSystemError(f"no weight for pair ({x}, {y})") from None

    def items(self):
        return sorted(self.values.items())

    def key(self):
        """Canonical hashable form, used for dedup and set membership."""
        if self._key is None:
            self._key = tuple(self.items())
        return self._key

    def violations(self):
        """Triples (x, z, y) with x < z < y where the chain condition fails."""
        ring = self.ring
        poset = self.poset
        out = []
        for x, y in poset.strict_pairs():
            for z in poset.reps:
                if poset.lt(x, z) and poset.lt(z, y):
                    if self.values[(x, y)] != ring.mul(self.values[(x, z)], self.values[(z, y)]):
                        out.append((x, z, y))
        return out

    def is_valid(self) -> bool:
        return not self.violations()

    @classmethod
    def identity(cls, poset, ring) -> "WeightSystem":
        one = ring.one()
        return cls(poset, ring, {p: one for p in poset.strict_pairs()})

    def __mul__(self, other):
        _same_carrier(self, other)
        ring = self.ring
        return WeightSystem(
            self.poset,
            ring,
            {p: ring.mul(v, other.values[p]) for p, v in self.values.items()},
        )

    def inverse(self) -> "WeightSystem":
        ring = self.ring
        return WeightSystem(
            self.poset, ring, {p: ring.inverse(v) for p, v in self.values.items()}
        )

    def apply(self, f: IncidenceFunction) -> IncidenceFunction:
        """Scale each cross-class entry of f by its class-pair weight."""
        if f.ring != self.ring or f.preorder != self.poset.source:
            raise WeightSystemError("function carrier does not match the weight system")
        cls = self.poset.class_of
        reps = self.poset.reps
        ring = self.ring
        out = {}
        for (s, t), v in f.entries.items():
            ci, cj = cls[s], cls[t]
            if ci == cj:
                out[(s, t)] = v
            else:
                out[(s, t)] = ring.mul(self.values[(reps[ci], reps[cj])], v)
        return IncidenceFunction(f.preorder, f.ring, out)

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, WeightSystem)
            and other.ring == self.ring
            and other.poset == self.poset
            and other.values == self.values
        )

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((str(self.ring), self.key()))

    def __repr__(self):
        return f"WeightSystem({len(self.values)} pairs over {self.ring})"


def _same_carrier(a, b):
    if a.ring != b.ring or a.poset != b.poset:
        raise WeightSystemError("weight systems live on different carriers")


class Potential:
    """Central unit attached to every class, keyed by representative."""

    __slots__ = ("poset", "ring", "values")

    def __init__(self, poset, ring, values):
        norm = {}
        for x, v in values.items():
            rep = poset.rep(x)
            if rep in norm:
                raise WeightSystemError(f"duplicate potential value for class {rep!r}")
            ring.check(v)
            if not ring.is_central_unit(v):
                raise WeightSystemError(
                    f"value {ring.format_element(v)} for class {rep!r} is not a central unit"
                )
            norm[rep] = v
        missing = [r for r in poset.reps if r not in norm]
        if missing:
            raise WeightSystemError(f"missing potential values for classes {missing}")
        self.poset = poset
        self.ring = ring
        self.values = norm

    def value(self, x):
        return self.values[self.poset.rep(x)]

    def items(self):
        return sorted(self.values.items())

    def __eq__(self, other):
        return (
            isinstance(other, Potential)
            and other.ring == self.ring
            and other.poset == self.poset
            and other.values == self.values
        )

    def __ne__(self, other):
        return not self.__eq__(other)

    def __repr__(self):
        return f"Potential({len(self.values)} classes over {self.ring})"


@dataclass(frozen=True)
class NotInnerWitness:
    """A fundamental cycle whose weight is not one."""

    cycle: FundamentalCycle
    weight: object

    def __str__(self):
        return f"cycle {self.cycle} has non-unit weight"


def from_potential(potential: Potential) -> WeightSystem:
    """Coboundary weights c[x,y] = v[x]^-1 v[y]."""
    ring = potential.ring
    values = {}
    for x, y in potential.poset.strict_pairs():
        values[(x, y)] = ring.mul(ring.inverse(potential.value(x)), potential.value(y))
    return WeightSystem(potential.poset, ring, values)


def from_tree(tree, ring, tree_values) -> WeightSystem:
    """Extend central-unit values on the spanning-tree edges to a full
    system by multiplying along the unique tree semi-path of each pair."""
    poset = tree.graph.poset
    norm = {}
    for (x, y), v in tree_values.items():
        pair = (poset.rep(x), poset.rep(y))
        if pair not in tree.tree_edges:
            raise WeightSystemError(f"({x}, {y}) is not a tree edge")
        if pair in norm:
            raise WeightSystemError(f"duplicate value for tree edge {pair}")
        ring.check(v)
        if not ring.is_central_unit(v):
            raise WeightSystemError(
                f"value {ring.format_element(v)} at {pair} is not a central unit of {ring}"
            )
        norm[pair] = v
    missing = sorted(tree.tree_edges - set(norm))
    if missing:
        raise WeightSystemError(f"missing values for tree edges {missing}")

    def step(u, w):
        if poset.lt(u, w):
            return norm[(u, w)]
        return ring.inverse(norm[(w, u)])

    values = dict(norm)
    for x, y in poset.strict_pairs():
        if (x, y) in values:
            continue
        path = tree.path(x, y)
        acc = ring.one()
        for u, w in zip(path, path[1:]):
            acc = ring.mul(acc, step(u, w))
        values[(x, y)] = acc
    return WeightSystem(poset, ring, values)


def _require_valid(ws: WeightSystem):
    bad = ws.violations()
    if bad:
        raise WeightSystemError(f"chain condition fails at triples {bad[:5]}")


def _propagate(ws: WeightSystem, tree) -> Potential:
    """Potential with value one at the root, pushed along tree edges."""
    ring = ws.ring
    poset = ws.poset
    values = {tree.root: ring.one()}
    for child in tree.bfs_order[1:]:
        parent = tree.parent[child]
        if poset.lt(parent, child):
            step = ws.value(parent, child)
        else:
            step = ring.inverse(ws.value(child, parent))
        values[child] = ring.mul(values[parent], step)
    return Potential(poset, ring, values)


def find_potential(ws: WeightSystem, root=None):
    """Reconstruct a vertex potential, or witness that none exists.

    Propagates from the root along a BFS spanning tree and compares the
    coboundary of the result with ws on the non-tree edges.  Returns a
    :class:`Potential`, or a :class:`NotInnerWitness` holding a
    fundamental cycle with non-unit weight.
    """
    _require_valid(ws)
    graph = ComparabilityGraph(ws.poset)
    tree = spanning_tree(graph, root)
    potential = _propagate(ws, tree)
    ring = ws.ring
    for edge in tree.non_tree_edges:
        x, y = edge
        expected = ring.mul(ring.inverse(potential.value(x)), potential.value(y))
        if ws.values[edge] != expected:
            cycle = next(c for c in fundamental_cycles(graph, tree) if c.edge == edge)
            return NotInnerWitness(cycle=cycle, weight=cycle_weight(ws, cycle))
    return potential


def is_inner_cycles(ws: WeightSystem, root=None):
    """Cycle-weight criterion: inner iff every fundamental cycle has weight one.

    Returns (answer, report) where report lists (cycle, weight) pairs.
    """
    _require_valid(ws)
    graph = ComparabilityGraph(ws.poset)
    tree = spanning_tree(graph, root)
    one = ws.ring.one()
    report = tuple((c, cycle_weight(ws, c)) for c in fundamental_cycles(graph, tree))
    return all(w == one for _, w in report), report


def decompose(ws: WeightSystem, root=None):
    """Split ws = w1 * w0 with w1 trivial on the tree edges and w0 a coboundary.

    Returns (w1, w0, potential) where w0 = from_potential(potential) and
    the potential is the tree propagation of ws with value one at the root.
    """
    _require_valid(ws)
    graph = ComparabilityGraph(ws.poset)
    tree = spanning_tree(graph, root)
    potential = _propagate(ws, tree)
    w0 = from_potential(potential)
    w1 = ws * w0.inverse()
    return w1, w0, potential


def to_mult_function(ws: WeightSystem) -> IncidenceFunction:
    """Incidence function acting by Hadamard product exactly as ws.apply:
    one on within-class pairs, the class-pair weight on cross pairs."""
    source = ws.poset.source
    cls = ws.poset.class_of
    reps = ws.poset.reps
    one = ws.ring.one()
    entries = {}
    for s, t in source.comparable_pairs():
        ci, cj = cls[s], cls[t]
        entries[(s, t)] = one if ci == cj else ws.values[(reps[ci], reps[cj])]
    return IncidenceFunction(source, ws.ring, entries)


def from_mult_function(m: IncidenceFunction) -> WeightSystem:
    """Inverse of :func:`to_mult_function`.

    Requires central-unit values on all comparable pairs, the product
    identity m(x,y) = m(x,z) m(z,y) on chains x <= z <= y (which forces
    ones on the diagonal), and ones on within-class pairs.
    """
    preorder = m.preorder
    ring = m.ring
    quotient = preorder.quotient()
    pairs = preorder.comparable_pairs()
    for x, y in pairs:
        v = m.entries.get((x, y))
        if v is None or not ring.is_central_unit(v):
            raise WeightSystemError(f"value at ({x}, {y}) is not a central unit")
    for x, y in pairs:
        target = m.entries[(x, y)]
        for z in preorder.elements:
            if preorder.leq(x, z) and preorder.leq(z, y):
                if target != ring.mul(m.entries[(x, z)], m.entries[(z, y)]):
                    raise WeightSystemError(
                        f"multiplicativity fails on the chain ({x}, {z}, {y})"
                    )
    one = ring.one()
    cls = quotient.class_of
    for x, y in pairs:
        if cls[x] == cls[y] and m.entries[(x, y)] != one:
            raise WeightSystemError(f"within-class value at ({x}, {y}) must be one")
    values = {p: m.entries[p] for p in quotient.strict_pairs()}
    return WeightSystem(quotient, ring, values)


def from_point_map(potential: Potential) -> IncidenceFunction:
    """Multiplicative function of a point potential: m(x,y) = v[x]^-1 v[y]."""
    return to_mult_function(from_potential(potential))


def weight_system_to_json(ws: WeightSystem) -> str:
    records = [
        {"from": x, "to": y, "value": ws.ring.format_element(v)}
        for (x, y), v in ws.items()
    ]
    return json.dumps({"ring": str(ws.ring), "weights": records}, indent=2, sort_keys=True) + "\n"


def weight_system_from_json(text: str, poset, ring=None) -> WeightSystem:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise WeightSystemError(f"bad weight-system file: {e}") from None
    if not isinstance(obj, dict) or "ring" not in obj or not isinstance(obj.get("weights"), list):
        raise WeightSystemError('weight-system file needs "ring" and a "weights" list')
    file_ring = parse_ring_spec(obj["ring"])
    if ring is not None and ring != file_ring:
        raise WeightSystemError(f"file ring {file_ring} does not match expected ring {ring}")
    use = file_ring if ring is None else ring
    values = {}
    for rec in obj["weights"]:
        if not isinstance(rec, dict) or not {"from", "to", "value"} <= set(rec):
            raise WeightSystemError(f"malformed weight entry {rec!r}")
        x, y = rec["from"], rec["to"]
        for lab in (x, y):
            if poset.rep(lab) != lab:
                raise WeightSystemError(
                    f"label {lab!r} is not a class representative (expected {poset.rep(lab)!r})"
                )
        if (x, y) in values:
            raise WeightSystemError(f"duplicate weight entry for pair ({x}, {y})")
        values[(x, y)] = use.parse_element(rec["value"])
    return WeightSystem(poset, use, values)


def load_weight_system(path, poset, ring=None) -> WeightSystem:
    with open(path, "r", encoding="utf-8") as fh:
        return weight_system_from_json(fh.read(), poset, ring)


def potential_to_json(potential: Potential) -> str:
    records = [
        {"class": x, "value": potential.ring.format_element(v)}
        for x, v in potential.items()
    ]
    return json.dumps({"ring": str(potential.ring), "values": records}, indent=2, sort_keys=True) + "\n"


def potential_from_json(text: str, poset, ring=None) -> Potential:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise WeightSystemError(f"bad potential file: {e}") from None
    if not isinstance(obj, dict) or "ring" not in obj or not isinstance(obj.get("values"), list):
        raise WeightSystemError('potential file needs "ring" and a "values" list')
    file_ring = parse_ring_spec(obj["ring"])
    if ring is not None and ring != file_ring:
        raise WeightSystemError(f"file ring {file_ring} does not match expected ring {ring}")
    use = file_ring if ring is None else ring
    values = {}
    for rec in obj["values"]:
        if not isinstance(rec, dict) or not {"class", "value"} <= set(rec):
            raise WeightSystemError(f"malformed potential entry {rec!r}")
        lab = rec["class"]
        if poset.rep(lab) != lab:
            raise WeightSystemError(f"label {lab!r} is not a class representative")
        if lab in values:
            raise WeightSystemError(f"duplicate potential entry for class {lab!r}")
        values[lab] = use.parse_element(rec["value"])
    return Potential(poset, use, values)
