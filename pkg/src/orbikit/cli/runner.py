"""Execute scenario tasks and collect per-task reports."""

from __future__ import annotations

import time
from dataclasses import dataclass

from ..algebra.groups import describe_group
from ..algebra.homology import cohomology, homology
from ..borel import equivariant_cohomology
from ..errors import OrbikitError, TruncationError
from ..fundamental import DEFAULT_MAX_COSETS, fundamental_group
from ..orbispace import (
    Orbispace,
    SymbolicOrbispace,
    action_groupoid,
    classify_vertical_maps,
    compare_orbispaces,
    extract_chart,
    fiber_report,
    good_neighborhood_check,
    groupoid_equivalent,
    les_solve,
    make_global_quotient,
    stabilizer,
)
from ..orbispace.les import LESSpec, Zero
from ..simplicial import nerve_of_complex
from .report import Report, TaskReport
from .scenario import Scenario


@dataclass
class RunOptions:
    truncation: int | None = None
    max_cosets: int = DEFAULT_MAX_COSETS
    coefficients: str | None = None  # default for (co)homology tasks
    refine: int | None = None
    timing: bool = False


def _groups(gs) -> list[str]:
    return [str(g) for g in gs]


class _Context:
    def __init__(self, sc: Scenario, opts: RunOptions):
        self.sc = sc
        self.opts = opts
        self.N = opts.truncation or sc.truncation
        self._orbispaces: dict[str, object] = {}
        self._nerves: dict[str, object] = {}

    def nerve(self, cname: str):
        if cname not in self._nerves:
            self._nerves[cname] = nerve_of_complex(self.sc.complexes[cname], self.N)
        return self._nerves[cname]

    def orbispace(self, name: str):
        if name not in self._orbispaces:
            decl = self.sc.orbispaces[name]
            if decl.symbolic is not None:
                sym = decl.symbolic
                under = self.nerve(sym["underlying"]) if sym.get("underlying") else None
                seq = LESSpec.parse([str(e) for e in sym["exact_sequence"]])
                self._orbispaces[name] = SymbolicOrbispace.from_les(
                    name, under, str(sym["stabilizer"]), seq, str(sym["unknown"]))
            else:
                act = self.sc.actions[decl.action]
                refine = decl.refine if self.opts.refine is None else self.opts.refine
                self._orbispaces[name] = make_global_quotient(
                    self.sc.complexes[act.complex], self.sc.groups[act.group], act.perms,
                    N=self.N, refine=refine, name=name)
        return self._orbispaces[name]

    def global_orbispace(self, name: str) -> Orbispace:
        M = self.orbispace(name)
        if not isinstance(M, Orbispace):
            raise OrbikitError(f"{name} is a symbolic record; this operation needs a simplicial model")
        return M

    def space(self, args):
        """Simplicial set named by ``space`` and ``part`` (P, Q or X for orbispaces)."""
        name = args["space"]
        if name in self.sc.complexes:
            return self.nerve(name)
        M = self.global_orbispace(name)
        part = args.get("part", "P")
        if part == "P":
            return M.P
        if part == "Q":
            return M.Q
        if part == "X":
            return M.borel.X
        raise OrbikitError(f"unknown part {part!r}; use P, Q or X")

    def vertices(self, M: Orbispace, args) -> list[int]:
        if "vertex" not in args:
            return list(range(M.Q.count(0)))
        return [M.vertex(args["vertex"])]

    def coefficients(self, args):
        c = args.get("coefficients", self.opts.coefficients)
        return None if c in (None, "integers") else c


def _vertex_name(M: Orbispace, x: int) -> str:
    return str(M.vertex_label(x))


# --- task implementations ---------------------------------------------------------


def _homology(ctx: _Context, args, co: bool):
    X = ctx.space(args)
    valid = X.N - 1
    degrees = args.get("degrees", list(range(valid + 1)))
    fn = cohomology if co else homology
    gs = fn(X, degrees, ctx.coefficients(args), check=False)
    key = "cohomology" if co else "homology"
    return valid, {"degrees": list(degrees), key: _groups(gs)}, None


def _pi1(ctx: _Context, args):
    X = ctx.space(args)
    r = fundamental_group(X, int(args.get("base", 0)), ctx.opts.max_cosets)
    res = {
        "presentation": str(r.simplified),
        "generators_before_simplification": r.presentation.ngens,
        "abelianization": str(r.abelianization),
        "order": r.order,
    }
    cert = None
    if r.group is not None:
        res["group"] = describe_group(r.group)
        cert = {"witness": "coset-table generator images satisfy every relator and generate the group",
                "generator_images": list(r.generator_images)}
    return X.N - 1, res, cert


def _borel(ctx: _Context, args):
    M = ctx.global_orbispace(args["orbispace"])
    d = M.valid_degree
    r = fundamental_group(M.P, 0, ctx.opts.max_cosets)
    res = {
        "group": M.group.name,
        "cells_X": M.borel.X.counts(),
        "cells_P": M.P.counts(),
        "cells_Q": M.Q.counts(),
        "homology_P": _groups(homology(M.P, range(d + 1), check=False)),
        "homology_Q": _groups(homology(M.Q, range(d + 1), check=False)),
        "pi1_P": {"presentation": str(r.simplified), "order": r.order, "abelianization": str(r.abelianization)},
        "action_free": M.borel.action.is_free(),
    }
    return d, res, None


def _eq_cohomology(ctx: _Context, args):
    M = ctx.global_orbispace(args["orbispace"])
    B = M.borel
    gs = equivariant_cohomology(B.X, B.G, B.action, B.N, ctx.coefficients(args))
    return gs.valid_degree, {"coefficients": gs.coefficients, "cohomology": _groups(gs)}, None


def _stabilizer(ctx: _Context, args):
    M = ctx.global_orbispace(args["orbispace"])
    rows = []
    for x in ctx.vertices(M, args):
        rows.append({"vertex": _vertex_name(M, x), "stabilizer": describe_group(stabilizer(M, x, ctx.opts.max_cosets))})
    return M.valid_degree, {"stabilizers": rows}, None


def _degree(M, args) -> int:
    d = int(args.get("degree", M.valid_degree))
    if d > M.valid_degree:
        raise TruncationError(f"degree {d} is above the valid degree {M.valid_degree}")
    return d


def _fiber(ctx: _Context, args):
    M = ctx.global_orbispace(args["orbispace"])
    d = _degree(M, args)
    rows, ok = [], True
    for x in ctx.vertices(M, args):
        c = fiber_report(M, x, d, ctx.opts.max_cosets)
        ok &= c.passed
        rows.append({
            "vertex": _vertex_name(M, x), "stabilizer": c.stabilizer, "pi1_fiber_order": c.pi1_order,
            "isomorphism_witness": list(c.witness) if c.witness else None,
            "cover_reduced_homology": _groups(c.cover_reduced_homology), "passed": c.passed,
        })
    cert = {"checked": f"π₁(fiber) ≅ stabilizer by explicit isomorphism; universal cover acyclic in degrees 0..{d}",
            "passed": ok}
    return M.valid_degree, {"fibers": rows}, cert


def _good(ctx: _Context, args):
    M = ctx.global_orbispace(args["orbispace"])
    d = _degree(M, args)
    rows, ok = [], True
    for x in ctx.vertices(M, args):
        c = good_neighborhood_check(M, x, d, ctx.opts.max_cosets)
        ok &= c.passed
        rows.append({"vertex": _vertex_name(M, x), "star_cells": list(c.star_counts),
                     "homology_iso": list(c.homology_iso), "pi1_iso": c.pi1_iso, "passed": c.passed})
    cert = {"checked": f"fiber inclusion induces H_k isomorphisms for k <= {d} and a π₁ isomorphism",
            "passed": ok}
    return M.valid_degree, {"neighborhoods": rows}, cert


def _chart(ctx: _Context, args):
    M = ctx.global_orbispace(args["orbispace"])
    d = _degree(M, args)
    rows, ok = [], True
    for x in ctx.vertices(M, args):
        c = extract_chart(M, x, d, ctx.opts.max_cosets)
        ok &= c.passed
        rows.append({"vertex": _vertex_name(M, x), "stabilizer": describe_group(c.stabilizer),
                     "chart_cells": c.chart.counts(), "star_cells": c.U.counts(),
                     "quotient_is_star": c.quotient_iso,
                     "chart_reduced_homology": _groups(c.chart_reduced_homology), "passed": c.passed})
    cert = {"checked": f"chart/G_x cell-isomorphic to the star; chart acyclic in degrees 0..{d}", "passed": ok}
    return M.valid_degree, {"charts": rows}, cert


def _sections(ctx: _Context, args):
    B = ctx.nerve(args["base"])
    G = ctx.sc.groups[args["group"]]
    v = classify_vertical_maps(B, G)
    res = {"pi1_base": str(v.presentation), "group": G.name, "classes": v.count,
           "representatives": [list(c) for c in v.classes]}
    return B.N - 1, res, None


def _les(ctx: _Context, args):
    seq = LESSpec.parse([str(e) for e in args["entries"]])
    r = les_solve(seq)
    resolved = {k: "0" if isinstance(v, Zero) else str(v) for k, v in r.resolved.items()}
    res = {"sequence": str(seq), "resolved": resolved, "deductions": list(r.deductions),
           "ambiguous": list(r.ambiguous),
           "constraints": {k: list(v) for k, v in r.constraints.items()}}
    return None, res, None


def _compare(ctx: _Context, args):
    A, B = ctx.orbispace(args["left"]), ctx.orbispace(args["right"])
    d = int(args.get("degree", ctx.N - 1))
    rep = compare_orbispaces(A, B, d, ctx.opts.max_cosets)
    rows = [{"invariant": r.invariant, "left": r.left, "right": r.right,
             "differs": "n/a" if r.differs is None else r.differs} for r in rep.rows]
    return d, {"verdict": rep.verdict, "invariants": rows, "notes": list(rep.notes)}, None


def _groupoid(ctx: _Context, args):
    M = ctx.global_orbispace(args["orbispace"])
    g = action_groupoid(M)
    orbits = [[str(g.labels[v]) for v in o] for o in g.orbits()]
    return None, {"objects": len(g.objects), "orbits": orbits, "isotropy": g.isotropy_profile()}, None


def _groupoid_eq(ctx: _Context, args):
    A = action_groupoid(ctx.global_orbispace(args["left"]))
    B = action_groupoid(ctx.global_orbispace(args["right"]))
    c = groupoid_equivalent(A, B)
    return None, {"equivalent": c.equivalent, "orbit_counts": list(c.orbit_counts),
                  "left_isotropy": list(c.left_isotropy), "right_isotropy": list(c.right_isotropy),
                  "reason": c.reason}, None


HANDLERS = {
    "homology": lambda c, a: _homology(c, a, False),
    "cohomology": lambda c, a: _homology(c, a, True),
    "pi1": _pi1,
    "borel": _borel,
    "equivariant_cohomology": _eq_cohomology,
    "stabilizer": _stabilizer,
    "fiber": _fiber,
    "good_neighborhood": _good,
    "chart": _chart,
    "classify_sections": _sections,
    "les": _les,
    "compare": _compare,
    "groupoid": _groupoid,
    "groupoid_equivalent": _groupoid_eq,
}


def run(scenario: Scenario, options: RunOptions | None = None) -> Report:
    """Run every task in order; a failing task is recorded and later tasks still run."""
    opts = options or RunOptions()
    ctx = _Context(scenario, opts)
    report = Report(scenario.name, ctx.N)
    for i, task in enumerate(scenario.tasks, start=1):
        start = time.perf_counter()
        tr = TaskReport(i, task.op, dict(task.args), "ok")
        try:
            valid, result, cert = HANDLERS[task.op](ctx, task.args)
            tr.valid_degree, tr.result, tr.certificate = valid, result, cert
            if cert is not None and cert.get("passed") is False:
                tr.status = "failed"
                tr.error = "certificate check failed"
        except (OrbikitError, ValueError) as exc:
            tr.status = "failed"
            tr.error = f"{type(exc).__name__}: {exc}"
        if opts.timing:
            tr.timing = round(time.perf_counter() - start, 3)
        report.tasks.append(tr)
    return report
