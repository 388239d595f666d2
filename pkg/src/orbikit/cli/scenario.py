"""Scenario files: YAML documents declaring groups, complexes, actions, orbispaces and tasks.

Grammar (all sections optional except ``tasks``)::

    name: <text>
    truncation: <int >= 2>            # default 3
    groups:      {<name>: {cyclic: n} | {symmetric: n} | {table: [[...], ...]}}
    complexes:   {<name>: {builtin: point|path|simplex|simplex_boundary|octahedron, <params>}
                        | {facets: [[v, ...], ...]}}
    actions:     {<name>: {group: G, complex: K,
                           trivial: true | generators: {<element>: {<vertex>: <vertex>, ...}}}}
    orbispaces:  {<name>: {action: A, refine: k}
                        | {symbolic: {underlying: K, stabilizer: <text>,
                                      exact_sequence: [<entry>, ...], unknown: <name>}}}
    tasks:       [{op: <operation>, <argument>: <value>, ...}, ...]

``generators`` maps group elements (table indices) to vertex maps with
unlisted vertices fixed; the action is extended to the whole group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import yaml

from ..algebra.groups import FiniteGroup, make_group
from ..errors import OrbikitError, ParseError, UnresolvedName
from ..library import builtin_complex, extend_vertex_action, trivial_vertex_action, check_preserves_facets
from ..simplicial import OrderedComplex

TOP_KEYS = ("name", "truncation", "groups", "complexes", "actions", "orbispaces", "tasks")

# op -> (required args, optional args)
OPERATIONS: dict[str, tuple[tuple[str, ...], tuple[str, ...]]] = {
    "homology": (("space",), ("part", "degrees", "coefficients")),
    "cohomology": (("space",), ("part", "degrees", "coefficients")),
    "pi1": (("space",), ("part", "base")),
    "borel": (("orbispace",), ()),
    "equivariant_cohomology": (("orbispace",), ("coefficients",)),
    "stabilizer": (("orbispace",), ("vertex",)),
    "fiber": (("orbispace",), ("vertex", "degree")),
    "good_neighborhood": (("orbispace",), ("vertex", "degree")),
    "chart": (("orbispace",), ("vertex", "degree")),
    "classify_sections": (("base", "group"), ()),
    "les": (("entries",), ()),
    "compare": (("left", "right"), ("degree",)),
    "groupoid": (("orbispace",), ()),
    "groupoid_equivalent": (("left", "right"), ()),
}


@dataclass
class ActionDecl:
    group: str
    complex: str
    perms: list[tuple[int, ...]]


@dataclass
class OrbispaceDecl:
    action: str | None = None
    refine: int = 0
    symbolic: dict[str, Any] | None = None


@dataclass
class TaskDecl:
    op: str
    args: dict[str, Any]
    line: int | None = None


@dataclass
class Scenario:
    name: str = "scenario"
    truncation: int = 3
    groups: dict[str, FiniteGroup] = field(default_factory=dict)
    complexes: dict[str, OrderedComplex] = field(default_factory=dict)
    actions: dict[str, ActionDecl] = field(default_factory=dict)
    orbispaces: dict[str, OrbispaceDecl] = field(default_factory=dict)
    tasks: list[TaskDecl] = field(default_factory=list)


# --- located YAML -----------------------------------------------------------------


class _Doc:
    """Plain Python values plus the source line of every node, keyed by path."""

    def __init__(self, node):
        self.lines: dict[tuple, int] = {}
        self.value = self._convert(node, ())

    def _convert(self, node, path):
        self.lines[path] = node.start_mark.line + 1
        if isinstance(node, yaml.MappingNode):
            out = {}
            for k, v in node.value:
                key = yaml.safe_load(yaml.serialize(k)) if isinstance(k, yaml.ScalarNode) else None
                if key is None and not isinstance(k, yaml.ScalarNode):
                    raise ParseError("mapping keys must be scalars", k.start_mark.line + 1)
                out[key] = self._convert(v, path + (key,))
                self.lines.setdefault(path + (key,), k.start_mark.line + 1)
            return out
        if isinstance(node, yaml.SequenceNode):
            return [self._convert(v, path + (i,)) for i, v in enumerate(node.value)]
        return yaml.safe_load(yaml.serialize(node))

    def line(self, path) -> int | None:
        path = tuple(path)
        while path not in self.lines and path:
            path = path[:-1]
        return self.lines.get(path)


def _field_name(path) -> str:
    return ".".join(str(p) for p in path)


def parse_scenario(text: str) -> Scenario:
    """Parse and validate a scenario; errors carry the line and field they refer to."""
    try:
        node = yaml.compose(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ParseError(f"invalid YAML: {getattr(exc, 'problem', exc)}", mark.line + 1 if mark else None) from None
    if node is None:
        raise ParseError("empty scenario")
    doc = _Doc(node)
    data = doc.value
    if not isinstance(data, dict):
        raise ParseError("scenario must be a mapping", doc.line(()))

    def fail(msg, *path, cls=ParseError):
        raise cls(msg, doc.line(path), _field_name(path) or None)

    for key in data:
        if key not in TOP_KEYS:
            fail(f"unknown section {key!r}", key)
    sc = Scenario()
    sc.name = str(data.get("name", "scenario"))
    N = data.get("truncation", 3)
    if not isinstance(N, int) or isinstance(N, bool) or N < 2:
        fail("truncation must be an integer >= 2", "truncation")
    sc.truncation = N

    for gname, decl in _mapping(data, "groups", fail).items():
        sc.groups[str(gname)] = _parse_group(decl, ("groups", gname), fail)
    for cname, decl in _mapping(data, "complexes", fail).items():
        sc.complexes[str(cname)] = _parse_complex(str(cname), decl, ("complexes", cname), fail)
    for aname, decl in _mapping(data, "actions", fail).items():
        sc.actions[str(aname)] = _parse_action(sc, decl, ("actions", aname), fail)
    for oname, decl in _mapping(data, "orbispaces", fail).items():
        sc.orbispaces[str(oname)] = _parse_orbispace(sc, decl, ("orbispaces", oname), fail)

    tasks = data.get("tasks", [])
    if tasks is None:
        tasks = []
    if not isinstance(tasks, list):
        fail("tasks must be a list", "tasks")
    for i, t in enumerate(tasks):
        sc.tasks.append(_parse_task(sc, t, ("tasks", i), fail, doc))
    return sc


def _mapping(data, key, fail) -> dict:
    v = data.get(key) or {}
    if not isinstance(v, dict):
        fail(f"{key} must be a mapping", key)
    return v


def _parse_group(decl, path, fail) -> FiniteGroup:
    if not isinstance(decl, dict) or len(decl) != 1:
        fail("a group is {cyclic: n}, {symmetric: n} or {table: [...]}", *path)
    (kind, val), = decl.items()
    try:
        if kind in ("cyclic", "symmetric"):
            if not isinstance(val, int) or val < 1:
                fail(f"{kind} needs a positive integer", *path, kind)
            G = make_group(kind, val)
        elif kind == "table":
            G = make_group("table", table=val)
        else:
            fail(f"unknown group kind {kind!r}", *path)
    except OrbikitError as exc:
        if isinstance(exc, ParseError):
            raise
        fail(str(exc), *path, kind)
    except (TypeError, ValueError) as exc:
        fail(f"invalid table: {exc}", *path, kind)
    return FiniteGroup(G.table, name=str(path[-1]), elements=G.elements)


def _parse_complex(name, decl, path, fail) -> OrderedComplex:
    if not isinstance(decl, dict):
        fail("a complex is {builtin: ...} or {facets: [...]}", *path)
    try:
        if "builtin" in decl:
            params = {k: v for k, v in decl.items() if k != "builtin"}
            K = builtin_complex(str(decl["builtin"]), **params)
        elif "facets" in decl:
            facets = decl["facets"]
            if not isinstance(facets, list) or not all(isinstance(f, list) and f for f in facets):
                fail("facets must be a list of nonempty vertex lists", *path, "facets")
            K = OrderedComplex.from_facets(facets)
        else:
            fail("a complex needs 'builtin' or 'facets'", *path)
    except ParseError:
        raise
    except (OrbikitError, KeyError, TypeError, ValueError) as exc:
        fail(f"invalid complex: {exc}", *path)
    return OrderedComplex(K.vertices, K.facets, name=name)


def _resolve(table: dict, key, kind: str, path, fail):
    if key not in table:
        fail(f"undeclared {kind} {key!r}", *path, cls=UnresolvedName)
    return table[key]


def _parse_action(sc: Scenario, decl, path, fail) -> ActionDecl:
    if not isinstance(decl, dict):
        fail("an action is a mapping", *path)
    gname, cname = decl.get("group"), decl.get("complex")
    G = _resolve(sc.groups, gname, "group", path + ("group",), fail)
    K = _resolve(sc.complexes, cname, "complex", path + ("complex",), fail)
    n = len(K.vertices)
    try:
        if decl.get("trivial"):
            perms = trivial_vertex_action(G, n)
        else:
            gens = decl.get("generators")
            if not isinstance(gens, dict) or not gens:
                fail("an action needs 'trivial: true' or a 'generators' mapping", *path)
            images = {}
            for g, vmap in gens.items():
                if not isinstance(g, int) or not 0 <= g < G.order:
                    fail(f"{g!r} is not an element of {gname}", *path, "generators", g)
                perm = list(range(n))
                for a, b in (vmap or {}).items():
                    perm[K.vertex_index(a)] = K.vertex_index(b)
                images[g] = perm
            perms = extend_vertex_action(G, images, n)
        check_preserves_facets(K, perms)
    except ParseError:
        raise
    except OrbikitError as exc:
        fail(str(exc), *path)
    return ActionDecl(str(gname), str(cname), [tuple(p) for p in perms])


def _parse_orbispace(sc: Scenario, decl, path, fail) -> OrbispaceDecl:
    if not isinstance(decl, dict):
        fail("an orbispace is a mapping", *path)
    if "symbolic" in decl:
        sym = decl["symbolic"]
        if not isinstance(sym, dict):
            fail("symbolic must be a mapping", *path, "symbolic")
        if "underlying" in sym:
            _resolve(sc.complexes, sym["underlying"], "complex", path + ("symbolic", "underlying"), fail)
        for key in ("stabilizer", "exact_sequence", "unknown"):
            if key not in sym:
                fail(f"symbolic orbispace needs {key!r}", *path, "symbolic")
        return OrbispaceDecl(symbolic=dict(sym))
    _resolve(sc.actions, decl.get("action"), "action", path + ("action",), fail)
    refine = decl.get("refine", 0)
    if not isinstance(refine, int) or refine < 0:
        fail("refine must be a non-negative integer", *path, "refine")
    return OrbispaceDecl(action=str(decl["action"]), refine=refine)


def _parse_task(sc: Scenario, t, path, fail, doc) -> TaskDecl:
    if not isinstance(t, dict) or "op" not in t:
        fail("a task is a mapping with an 'op'", *path)
    op = t["op"]
    if op not in OPERATIONS:
        fail(f"unknown operation {op!r}", *path, "op")
    required, optional = OPERATIONS[op]
    args = {k: v for k, v in t.items() if k != "op"}
    for k in args:
        if k not in required and k not in optional:
            fail(f"unexpected argument {k!r} for {op}", *path, k)
    for k in required:
        if k not in args:
            fail(f"{op} needs argument {k!r}", *path)
    for k in ("orbispace", "left", "right"):
        if k in args:
            _resolve(sc.orbispaces, args[k], "orbispace", path + (k,), fail)
    if "space" in args and args["space"] not in sc.complexes and args["space"] not in sc.orbispaces:
        fail(f"undeclared complex or orbispace {args['space']!r}", *path, "space", cls=UnresolvedName)
    if op == "classify_sections":
        _resolve(sc.complexes, args["base"], "complex", path + ("base",), fail)
        _resolve(sc.groups, args["group"], "group", path + ("group",), fail)
    if op == "les" and (not isinstance(args["entries"], list) or not args["entries"]):
        fail("entries must be a nonempty list", *path, "entries")
    return TaskDecl(op, args, doc.line(path))
