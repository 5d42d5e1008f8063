"""Homology-class models of spherical divisors in rational surfaces.

An ambient is a blowup of the projective plane (basis h, e_1, ..., e_N,
pairing diag(1, -1, ..., -1)) or of the product of two spheres (basis
s, f, e_1, ..., e_N, hyperbolic pairing on s, f).  A divisor is a
cyclically ordered tuple of classes; its dual graph has the
self-pairings as vertex weights and the mutual pairings as edge
multiplicities.  All transforms return new values; the full coordinates
are the primary data and graphs are always derived from them.

Cap constructions start from two configurations of complex curves in
the plane: three lines in general position (a triangle of h classes)
and a line plus a conic (classes h and 2h).  Blowing up generic points
and nodes produces the cycle-shaped configurations whose boundaries are
the torus bundles of interest; each builder asserts that the resulting
dual graph is exactly the advertised one and that the total class stays
anticanonical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .blowup import EmbeddingWitness, dominates, embeddability_witness, path_to
from .errors import DomainError
from .sl2z import Mat2, monodromy, orientation_reversal

__all__ = [
    "CP2",
    "S2XS2",
    "Ambient",
    "HClass",
    "Divisor",
    "pairing",
    "adjunction_genus",
    "blowup_generic",
    "blowup_node_total",
    "dual_graph",
    "cycle_monodromy",
    "is_anticanonical",
    "elliptic_cap",
    "parabolic_cap",
    "hyperbolic_single_cap",
    "hyperbolic_cycle_cap",
    "cycle_cap_from_path",
    "realize_cap",
    "divisor_to_dict",
    "divisor_from_dict",
    "divisor_to_json",
    "divisor_from_json",
]

CP2 = "CP2"
S2XS2 = "S2xS2"


@dataclass(frozen=True)
class Ambient:
    """A blowup of CP2 or of S2 x S2, carrying its intersection form."""

    model: str
    blowups: int

    def __post_init__(self):
        if self.model not in (CP2, S2XS2):
            raise DomainError("unknown ambient model %r" % (self.model,))
        if self.blowups < 0:
            raise DomainError("blowup count must be nonnegative")

    @property
    def rank(self) -> int:
        return (1 if self.model == CP2 else 2) + self.blowups

    @property
    def labels(self):
        base = ("h",) if self.model == CP2 else ("s", "f")
        return base + tuple("e%d" % (i + 1) for i in range(self.blowups))

    def gram(self):
        n = self.rank
        g = [[0] * n for _ in range(n)]
        if self.model == CP2:
            g[0][0] = 1
            first_e = 1
        else:
            g[0][1] = g[1][0] = 1
            first_e = 2
        for i in range(first_e, n):
            g[i][i] = -1
        return tuple(tuple(row) for row in g)

    def zero(self) -> "HClass":
        return HClass(self, (0,) * self.rank)

    def basis_class(self, label: str) -> "HClass":
        try:
            idx = self.labels.index(label)
        except ValueError:
            raise DomainError("no basis class %r in %s" % (label, self.labels)) from None
        return HClass(self, tuple(int(i == idx) for i in range(self.rank)))

    def h(self) -> "HClass":
        return self.basis_class("h")

    def s(self) -> "HClass":
        return self.basis_class("s")

    def f(self) -> "HClass":
        return self.basis_class("f")

    def e(self, i: int) -> "HClass":
        return self.basis_class("e%d" % i)

    def anticanonical(self) -> "HClass":
        """3h - sum(e_i), respectively 2s + 2f - sum(e_i): the class dual
        to the first Chern class of the ambient."""
        if self.model == CP2:
            coords = (3,) + (-1,) * self.blowups
        else:
            coords = (2, 2) + (-1,) * self.blowups
        return HClass(self, coords)

    def extended(self, extra: int) -> "Ambient":
        return Ambient(self.model, self.blowups + extra)


@dataclass(frozen=True)
class HClass:
    """An integer second-homology class in a fixed ambient basis."""

    ambient: Ambient
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.ambient.rank:
            raise DomainError(
                "coordinate length %d does not match ambient rank %d"
                % (len(self.coords), self.ambient.rank)
            )

    def __add__(self, other: "HClass") -> "HClass":
        _same_ambient(self, other)
        return HClass(self.ambient, tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: "HClass") -> "HClass":
        _same_ambient(self, other)
        return HClass(self.ambient, tuple(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> "HClass":
        return HClass(self.ambient, tuple(-x for x in self.coords))

    def __mul__(self, scale: int) -> "HClass":
        if not isinstance(scale, int):
            raise DomainError("classes scale by integers only")
        return HClass(self.ambient, tuple(scale * x for x in self.coords))

    __rmul__ = __mul__

    def dot(self, other: "HClass") -> int:
        _same_ambient(self, other)
        g = self.ambient.gram()
        n = self.ambient.rank
        return sum(
            self.coords[i] * g[i][j] * other.coords[j] for i in range(n) for j in range(n)
        )

    def extended(self, ambient: Ambient) -> "HClass":
        assert ambient.model == self.ambient.model and ambient.rank >= self.ambient.rank
        return HClass(ambient, self.coords + (0,) * (ambient.rank - self.ambient.rank))

    def __str__(self):
        terms = []
        for c, label in zip(self.coords, self.ambient.labels):
            if c == 0:
                continue
            if c == 1:
                terms.append("+" + label)
            elif c == -1:
                terms.append("-" + label)
            else:
                terms.append("%+d%s" % (c, label))
        return "".join(terms).lstrip("+") or "0"


def _same_ambient(x: HClass, y: HClass):
    if x.ambient != y.ambient:
        raise DomainError("classes live in different ambients: %s vs %s" % (x.ambient, y.ambient))


def pairing(x: HClass, y: HClass) -> int:
    """Intersection pairing of two classes of a common ambient."""
    return x.dot(y)


def adjunction_genus(c: HClass) -> int:
    """Genus of a smooth representative: (c.c - antican.c + 2) / 2."""
    k = c.ambient.anticanonical()
    num = c.dot(c) - k.dot(c) + 2
    if num % 2:
        raise DomainError("adjunction genus of %s is not an integer" % (c,))
    return num // 2


@dataclass(frozen=True)
class Divisor:
    """A cyclically ordered configuration of sphere classes; component 0
    is the distinguished one when marked is 0 (the usual +1 sphere)."""

    ambient: Ambient
    components: tuple
    labels: tuple
    marked: int | None = None

    def __post_init__(self):
        if len(self.components) != len(self.labels):
            raise DomainError("component and label counts differ")
        for c in self.components:
            if c.ambient != self.ambient:
                raise DomainError("component ambient mismatch")

    def __len__(self):
        return len(self.components)

    def intersection_matrix(self):
        comps = self.components
        return tuple(tuple(x.dot(y) for y in comps) for x in comps)

    def total_class(self) -> HClass:
        total = self.ambient.zero()
        for c in self.components:
            total = total + c
        return total

    def replace(self, index: int, new_class: HClass) -> "Divisor":
        comps = list(self.components)
        comps[index] = new_class
        return Divisor(self.ambient, tuple(comps), self.labels, self.marked)


def dual_graph(div: Divisor):
    """(weights, edges): self-pairings in component order and the map
    {(i, j): pairing} over pairs with nonzero pairing, i < j."""
    q = div.intersection_matrix()
    n = len(q)
    weights = tuple(q[i][i] for i in range(n))
    edges = {}
    for i in range(n):
        for j in range(i + 1, n):
            if q[i][j]:
                edges[(i, j)] = q[i][j]
    return weights, edges


def is_anticanonical(div: Divisor) -> bool:
    """True iff the component classes sum to the anticanonical class."""
    return div.total_class() == div.ambient.anticanonical()


def _extend_divisor(div: Divisor, extra: int) -> Divisor:
    amb = div.ambient.extended(extra)
    comps = tuple(c.extended(amb) for c in div.components)
    return Divisor(amb, comps, div.labels, div.marked)


def blowup_generic(div: Divisor, index: int, times: int = 1) -> Divisor:
    """Blow up `times` generic points of one component and take proper
    transforms: the component loses the new exceptional classes, all
    other classes are unchanged."""
    if times < 1:
        raise DomainError("generic blowup needs times >= 1, got %d" % times)
    if not 0 <= index < len(div):
        raise DomainError("component index %d out of range" % index)
    old_rank = div.ambient.blowups
    out = _extend_divisor(div, times)
    cls = out.components[index]
    for k in range(times):
        cls = cls - out.ambient.e(old_rank + 1 + k)
    return out.replace(index, cls)


def blowup_node_total(div: Divisor, i: int, j: int) -> Divisor:
    """Blow up a node between cyclically adjacent components i and j and
    take the total transform: both classes lose the new exceptional
    class e, and e is inserted between them as a new component."""
    n = len(div)
    if not (0 <= i < n and 0 <= j < n):
        raise DomainError("component index out of range")
    if j != (i + 1) % n:
        raise DomainError("components %d and %d are not cyclically consecutive" % (i, j))
    if div.components[i].dot(div.components[j]) < 1:
        raise DomainError("components %d and %d have no node to blow up" % (i, j))
    out = _extend_divisor(div, 1)
    e = out.ambient.e(out.ambient.blowups)
    comps = list(out.components)
    labels = list(out.labels)
    comps[i] = comps[i] - e
    comps[j] = comps[j] - e
    insert_at = i + 1 if j == i + 1 else n
    comps.insert(insert_at, e)
    labels.insert(insert_at, "E%d" % out.ambient.blowups)
    marked = out.marked
    if marked is not None and insert_at <= marked:
        marked += 1
    result = Divisor(out.ambient, tuple(comps), tuple(labels), marked)
    assert result.components[i if insert_at > i else i + 1].dot(e) == 1
    return result


def cycle_monodromy(weights, edge_sign_product: int) -> Mat2:
    """Boundary monodromy of a cycle plumbing with the given vertex
    weights, up to the sign of the product of its edge signs.

    The cycle is traversed from the first vertex against list order,
    the convention under which a triangle with weights (e-1, 1, 0)
    composes to the string (1-e, 0, -1) on the nose.  Boundary data
    depends only on the edge-sign product, not the individual signs.
    """
    w = tuple(int(x) for x in weights)
    if len(w) < 2:
        raise DomainError("cycle needs at least two weights")
    if edge_sign_product not in (1, -1):
        raise DomainError("edge sign product must be +1 or -1")
    string = (-w[0],) + tuple(-x for x in reversed(w[1:]))
    mat = monodromy(string)
    return mat if edge_sign_product == 1 else -mat


# --- cap constructions ----------------------------------------------------


def _triangle() -> Divisor:
    amb = Ambient(CP2, 0)
    h = amb.h()
    return Divisor(amb, (h, h, h), ("L1", "L2", "L3"), marked=0)


def _line_conic() -> Divisor:
    amb = Ambient(CP2, 0)
    h = amb.h()
    two_h = h + h
    return Divisor(amb, (h, two_h), ("L", "C"), marked=0)


def elliptic_cap(epsilon: int, side: str) -> Divisor:
    """Cap for an elliptic bundle.

    side "left": proper transform of three generic lines, one generic
    point blown up on the second and 2 - epsilon on the third; dual
    graph is the triangle (+1, 0, epsilon - 1).  side "right": line and
    conic with 2 generic points on the line and 6 - epsilon on the
    conic; dual graph is the double edge (-1, epsilon - 2).
    """
    if epsilon not in (-1, 0, 1):
        raise DomainError("epsilon must be one of -1, 0, 1, got %r" % (epsilon,))
    if side == "left":
        div = blowup_generic(_triangle(), 1, 1)
        div = blowup_generic(div, 2, 2 - epsilon)
        target = (1, 0, epsilon - 1)
    elif side == "right":
        div = blowup_generic(_line_conic(), 0, 2)
        div = blowup_generic(div, 1, 6 - epsilon)
        target = (-1, epsilon - 2)
    else:
        raise DomainError("side must be 'left' or 'right', got %r" % (side,))
    weights, _ = dual_graph(div)
    assert weights == target and is_anticanonical(div)
    return div


def parabolic_cap(n: int) -> Divisor:
    """Cap for the parabolic bundle family: line and conic with one
    generic point on the line and 4 - n on the conic; dual graph is the
    double edge (0, n).  Defined for n <= 4 only."""
    if n > 4:
        raise DomainError(
            "no cap for n > 4: the configuration does not embed in any "
            "closed model (n = %d)" % n
        )
    div = blowup_generic(_line_conic(), 0, 1)
    if n < 4:
        div = blowup_generic(div, 1, 4 - n)
    weights, edges = dual_graph(div)
    assert weights == (0, n) and edges == {(0, 1): 2} and is_anticanonical(div)
    return div


def hyperbolic_single_cap(c1: int) -> Divisor:
    """Cap for the hyperbolic family with a length-one weight string:
    line and conic with c1 + 2 generic points on the conic; dual graph
    is the double edge (+1, 2 - c1).  Requires c1 >= 3."""
    if c1 < 3:
        raise DomainError("single-vertex weight must be >= 3, got %d" % c1)
    div = blowup_generic(_line_conic(), 1, c1 + 2)
    weights, edges = dual_graph(div)
    assert weights == (1, 2 - c1) and edges == {(0, 1): 2} and is_anticanonical(div)
    return div


def cycle_cap_from_path(weights, path) -> Divisor:
    """Build the cycle cap for a weight string c = (c_1, ..., c_l) from
    an explicit chain of node blowups.

    Starting from the triangle of lines with the first line marked, the
    moves of `path` (positions in the associated integer sequence) are
    replayed as node blowups away from the marked line; each remaining
    component i is then blown up generically c_i - s_i times, where s is
    the endpoint of the path.  The result is a cycle with weights
    (+1, 1 - c_1, -c_2, ..., -c_{l-1}, 1 - c_l).
    """
    c = tuple(int(x) for x in weights)
    if len(c) < 2:
        raise DomainError("cycle cap needs a weight string of length >= 2")
    s = (0, 0)
    div = _triangle()
    for move in path:
        div = blowup_node_total(div, move, move + 1)
        from .blowup import blowup_at

        s = blowup_at(s, move)
    if len(s) != len(c) or not dominates(s, c):
        raise DomainError("sequence %s is not dominated by weights %s" % (s, c))
    for idx, (ci, si) in enumerate(zip(c, s)):
        if ci - si > 0:
            div = blowup_generic(div, idx + 1, ci - si)
    ell = len(c)
    target = (1,) + tuple(
        1 - c[k] if k in (0, ell - 1) else -c[k] for k in range(ell)
    )
    got, edges = dual_graph(div)
    assert got == target, "cycle cap produced %s, wanted %s" % (got, target)
    assert all(v == 1 for v in edges.values()) and len(edges) == ell + 1
    assert is_anticanonical(div)
    return div


def hyperbolic_cycle_cap(d, witness: EmbeddingWitness | None = None, limit: int = 14) -> Divisor:
    """Cap for an embeddable standard string d: realize the cycle with
    weights (+1, 1 - c_1, ..., 1 - c_l) for c the orientation reversal
    of d, replaying the witness blowup sequence node by node.

    A witness may be passed explicitly (for example a specific sequence
    found elsewhere); otherwise the deterministic first witness is used.
    """
    if witness is None:
        witness = embeddability_witness(d, limit)
        if witness is None:
            raise DomainError("string %s is not embeddable" % (tuple(d),))
    else:
        c = orientation_reversal(d)
        if len(witness.sequence) != len(c):
            raise DomainError("witness length does not match the reversal of %s" % (tuple(d),))
        for k in range(len(c)):
            if c[k:] + c[:k] == witness.target:
                break
        else:
            raise DomainError("witness target is not a rotation of the reversal")
        if not dominates(witness.sequence, witness.target):
            raise DomainError("witness sequence is not dominated by its target")
    return cycle_cap_from_path(witness.target, path_to(witness.sequence))


def realize_cap(kind: str, **params) -> Divisor:
    """Dispatch a cap construction by kind: 'elliptic-left',
    'elliptic-right' (epsilon=...), 'parabolic' (n=...),
    'hyperbolic-single' (c1=...), or 'hyperbolic-cycle' (d=...,
    optionally witness=...)."""
    if kind == "elliptic-left":
        return elliptic_cap(params["epsilon"], "left")
    if kind == "elliptic-right":
        return elliptic_cap(params["epsilon"], "right")
    if kind == "parabolic":
        return parabolic_cap(params["n"])
    if kind == "hyperbolic-single":
        return hyperbolic_single_cap(params["c1"])
    if kind == "hyperbolic-cycle":
        return hyperbolic_cycle_cap(params["d"], params.get("witness"))
    raise DomainError("unknown cap kind %r" % (kind,))


# --- serialization --------------------------------------------------------


def divisor_to_dict(div: Divisor) -> dict:
    return {
        "ambient": {"model": div.ambient.model, "blowups": div.ambient.blowups},
        "components": [
            {"label": label, "coords": list(c.coords)}
            for label, c in zip(div.labels, div.components)
        ],
        "marked": div.marked,
    }


def divisor_from_dict(data: dict) -> Divisor:
    amb = Ambient(data["ambient"]["model"], data["ambient"]["blowups"])
    comps = tuple(HClass(amb, tuple(entry["coords"])) for entry in data["components"])
    labels = tuple(entry["label"] for entry in data["components"])
    return Divisor(amb, comps, labels, data.get("marked"))


def divisor_to_json(div: Divisor) -> str:
    return json.dumps(divisor_to_dict(div), sort_keys=True)


def divisor_from_json(text: str) -> Divisor:
    return divisor_from_dict(json.loads(text))
