"""Ext^1-quivers: computed (two engines), expected (closed-form tables), diff, emission."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field as dc_field

from . import der1, rep
from .ext1 import DEFAULT_CAP, EngineDisagreement, ext1
from .gf import poly_roots
from .midheight import classify_height_pm1, midheight_modules, restricted_abelianization_dim
from .witt import Character, height, representative, witt

ENGINES = ("cocycle", "derivation", "both")
FAMILIES = ("verma", "simple")


@dataclass
class Quiver:
    p: int
    height: int
    chi: list
    family: str
    nodes: list
    edges: dict = dc_field(default_factory=dict)  # (source, target) -> multiplicity > 0
    engine: str = "expected"
    provenance: dict = dc_field(default_factory=dict)  # (source, target) -> engine actually used

    def mult(self, a, b) -> int:
        return self.edges.get((a, b), 0)

    def set(self, a, b, m: int) -> None:
        if m < 0:
            raise ValueError("multiplicities are non-negative")
        if m:
            self.edges[(a, b)] = m
        else:
            self.edges.pop((a, b), None)

    def table(self) -> list[list[int]]:
        return [[self.mult(a, b) for b in self.nodes] for a in self.nodes]

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "height": self.height,
            "chi": list(self.chi),
            "family": self.family,
            "nodes": list(self.nodes),
            "edges": [{"from": a, "to": b, "mult": m} for (a, b), m in sorted(self.edges.items(), key=_edge_key)],
            "engine": self.engine,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Quiver":
        q = cls(d["p"], d["height"], list(d["chi"]), d["family"], list(d["nodes"]), {}, d.get("engine", "expected"))
        for e in d["edges"]:
            q.set(e["from"], e["to"], e["mult"])
        return q

    def __eq__(self, other):
        if not isinstance(other, Quiver):
            return NotImplemented
        return self.to_dict() == other.to_dict()


def _node_key(x):
    return (0, x, "") if isinstance(x, int) else (1, 0, str(x))


def _edge_key(item):
    (a, b), _ = item
    return (_node_key(a), _node_key(b))


# ---------------------------------------------------------------------------
# computed quivers


def _resolve(p: int, chi: Character | None, h: int | None) -> tuple[Character, int]:
    witt(p)  # validates p
    if chi is None:
        if h is None:
            raise ValueError("give a height or an explicit character")
        chi = representative(p, h)
    r = height(chi)
    if h is not None and h != r:
        raise ValueError(f"character has height {r}, not {h}")
    if r in (-1, 0, 1) and chi != representative(p, r):
        raise ValueError(f"for height {r} use the standard representative {list(representative(p, r).values)}")
    return chi, r


def node_modules(p: int, r: int, family: str, chi: Character | None = None) -> dict:
    if r == -1:
        if family == "verma":
            return {lam: rep.verma(p, lam) for lam in range(p)}
        return {lam: rep.simple_restricted(p, lam) for lam in range(p)}
    if family != "simple":
        raise ValueError("Verma quivers are only defined for chi = 0")
    if r == 0:
        return {lam: rep.simple_height0(p, lam) for lam in range(p - 1)}
    if r == 1:
        return {lam: rep.simple_height1(p, lam) for lam in range(p)}
    if 1 < r < p - 1:
        return {"L": midheight_modules(chi or representative(p, r)).L}
    raise ValueError(f"no module construction at height {r}")


def derivation_ext(p: int, r: int, family: str, mu, lam) -> int | None:
    """Ext^1(node mu, node lam) from weight spaces of derivations; None where the method does not apply."""
    if r == -1 and family == "verma":
        return der1.restricted_h1(rep.verma(p, lam), mu)
    if r == -1:
        mid = range(1, p - 1)
        if mu in mid:
            return der1.restricted_h1(rep.simple_restricted(p, lam), mu)
        if lam in mid:
            # Ext(L(mu), L(lam)) = Ext(L(lam)*, L(mu)*) with L(lam)* = L(p-1-lam), L(mu)* = L(mu)
            return der1.restricted_h1(rep.simple_restricted(p, mu), p - 1 - lam)
        if mu == lam == 0:
            return restricted_abelianization_dim(p, witt(p).graded(-1))
        return None
    if r == 0:
        return der1.restricted_h1(rep.simple_height0(p, lam).restrict(0), mu)
    if r == 1:
        return der1.restricted_h1(rep.twisted_borel_module(p, lam), mu)
    return None


def build_quiver(p: int, height_: int | None = None, family: str = "simple", engine: str = "cocycle",
                 chi: Character | None = None, cap: int = DEFAULT_CAP) -> Quiver:
    if engine not in ENGINES:
        raise ValueError(f"engine must be one of {ENGINES}")
    if family not in FAMILIES:
        raise ValueError(f"family must be one of {FAMILIES}")
    chi, r = _resolve(p, chi, height_)
    if r == p - 1:
        q = expected_quiver(p, r, family, flag=classify_height_pm1(p, chi).verdict)
        q.chi = list(chi.values)
        q.engine = "classification"
        return q
    mods = node_modules(p, r, family, chi)
    nodes = list(mods)
    q = Quiver(p, r, list(chi.values), family, nodes, {}, engine)
    for mu in nodes:
        for lam in nodes:
            vals = {}
            if engine in ("derivation", "both"):
                d = derivation_ext(p, r, family, mu, lam)
                if d is not None:
                    vals["derivation"] = d
            if engine in ("cocycle", "both") or "derivation" not in vals:
                vals["cocycle"] = ext1(mods[mu], mods[lam], cap=cap).dim
            if len(set(vals.values())) > 1:
                raise EngineDisagreement((mu, lam), vals)
            q.set(mu, lam, next(iter(vals.values())))
            q.provenance[(mu, lam)] = "+".join(sorted(vals))
    return q


# ---------------------------------------------------------------------------
# closed-form tables


def _quad_roots(p: int) -> list[int]:
    return poly_roots([3, -10, 2], p)


def _expected_verma(p: int) -> dict:
    E = {}
    for mu in range(p):
        for lam in range(p):
            d = (lam - mu) % p
            hit = False
            if p == 5:
                hit = d in (2, 3) or {mu, lam} in ({0}, {4}, {0, 1}, {0, 4}, {3, 4})
            else:
                special = {(0, 0), (-1, -1), (-1, 0), (0, -1), (0, 1), (-2, -1), (-5, 0), (-1, 4)}
                special = {(a % p, b % p) for a, b in special}
                hit = d in (2, 3, 4) or (mu, lam) in special or (lam in _quad_roots(p) and d == 6)
            if hit:
                E[(mu, lam)] = 1
    return E


def _expected_simple(p: int) -> dict:
    E = {}
    diffs = (2, 3) if p == 5 else (2, 3, 4)
    special = [(0, 1), (p - 2, 0), (p - 1, 2), (p - 1, 3)] + ([] if p == 5 else [(p - 1, 4)])
    roots = [] if p == 5 else _quad_roots(p)
    for mu in range(p):
        for lam in range(p):
            d = (lam - mu) % p
            if {mu, lam} == {0, p - 1}:
                E[(mu, lam)] = 2
                continue
            one = (d in diffs and 1 <= mu <= p - 2 and 1 <= lam <= p - 1) or (mu, lam) in special
            one = one or (lam in roots and d == 6 and 1 <= mu <= p - 2 and 1 <= lam <= p - 2)
            if one:
                E[(mu, lam)] = 1
    return E


def _expected_height0(p: int) -> dict:
    E = {}
    for mu in range(p - 1):
        for lam in range(p - 1):
            d = (lam - mu) % p
            if p == 5:
                hit = d in (2, 3) or (mu, lam) in {(0, 0), (1, 0), (0, 1)}
            else:
                hit = (d in (2, 3, 4) or (mu, lam) in {(0, 0), (0, 1), ((-5) % p, 0)}
                       or (lam in _quad_roots(p) and d == 6))
            if hit:
                E[(mu, lam)] = 1
    return E


def _expected_height1(p: int) -> dict:
    diffs = (2, 3) if p == 5 else (2, 3, 4)
    return {(mu, lam): 1 for mu in range(p) for lam in range(p) if (lam - mu) % p in diffs}


def expected_quiver(p: int, height_: int, family: str = "simple", flag: str | None = None) -> Quiver:
    """Closed-form Ext^1 tables for heights -1, 0, 1 and the classification-driven answer at p-1."""
    witt(p)
    chi = list(representative(p, height_).values) if height_ in (-1, 0, 1, p - 1) else []
    if height_ == -1:
        nodes = list(range(p))
        edges = _expected_verma(p) if family == "verma" else _expected_simple(p)
    elif height_ == 0:
        nodes, edges = list(range(p - 1)), _expected_height0(p)
    elif height_ == 1:
        nodes, edges = list(range(p)), _expected_height1(p)
    elif height_ == p - 1:
        if flag not in ("torus", "p-nilpotent"):
            raise ValueError("height p-1 needs flag 'torus' or 'p-nilpotent'")
        nodes = ["L"]
        edges = {} if flag == "torus" else {("L", "L"): 1}
    else:
        raise ValueError(f"no closed-form table for height {height_}")
    q = Quiver(p, height_, chi, family if height_ == -1 else "simple", nodes, {}, "expected")
    for (a, b), m in edges.items():
        q.set(a, b, m)
    return q


# ---------------------------------------------------------------------------
# comparison and rendering


@dataclass
class QuiverDiff:
    mismatches: list  # (source, target, computed, expected)

    def __bool__(self):
        return bool(self.mismatches)

    def lines(self) -> list[str]:
        return [f"{a} -> {b}: computed {c}, expected {e}" for a, b, c, e in self.mismatches]


def diff(computed: Quiver, expected: Quiver) -> QuiverDiff:
    if list(computed.nodes) != list(expected.nodes):
        raise ValueError(f"node sets differ: {computed.nodes} vs {expected.nodes}")
    out = []
    for a in computed.nodes:
        for b in computed.nodes:
            c, e = computed.mult(a, b), expected.mult(a, b)
            if c != e:
                out.append((a, b, c, e))
    return QuiverDiff(out)


def is_connected(q: Quiver) -> bool:
    if not q.nodes:
        return True
    adj = {n: set() for n in q.nodes}
    for (a, b) in q.edges:
        adj[a].add(b)
        adj[b].add(a)
    seen = {q.nodes[0]}
    todo = deque(seen)
    while todo:
        for m in adj[todo.popleft()]:
            if m not in seen:
                seen.add(m)
                todo.append(m)
    return len(seen) == len(q.nodes)


def delete_node(q: Quiver, node) -> Quiver:
    out = Quiver(q.p, q.height, list(q.chi), q.family, [n for n in q.nodes if n != node], {}, q.engine)
    for (a, b), m in q.edges.items():
        if node not in (a, b):
            out.set(a, b, m)
    return out


def emit(q: Quiver, fmt: str = "dot") -> str:
    if fmt == "json":
        return json.dumps(q.to_dict(), sort_keys=True, indent=2) + "\n"
    if fmt == "text":
        width = max(len(str(n)) for n in q.nodes) + 1 if q.nodes else 2
        head = " " * width + "".join(f"{str(n):>{width}}" for n in q.nodes)
        rows = [f"{str(a):>{width}}" + "".join(f"{q.mult(a, b):>{width}}" for b in q.nodes) for a in q.nodes]
        return "\n".join([f"# p={q.p} height={q.height} family={q.family} engine={q.engine} (rows: source)", head] + rows) + "\n"
    if fmt != "dot":
        raise ValueError(f"unknown format {fmt!r}")
    lines = ["digraph ext1 {"]
    for n in sorted(q.nodes, key=_node_key):
        lines.append(f"  {n};")
    for (a, b), m in sorted(q.edges.items(), key=_edge_key):
        for _ in range(m):
            lines.append(f"  {a} -> {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def from_json(text: str) -> Quiver:
    return Quiver.from_dict(json.loads(text))


__all__ = [
    "Quiver", "QuiverDiff", "build_quiver", "expected_quiver", "diff", "is_connected", "emit",
    "from_json", "delete_node", "node_modules", "derivation_ext", "ENGINES", "FAMILIES",
]
