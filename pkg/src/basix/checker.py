"""Decision procedures for basic / generically basic / principal sets.

The pipeline shares one sphere model (both charts) per scene: openness and
set-meets-boundary prechecks, the curve-level sign criterion over both charts,
then blow-up analysis of every non-normal-crossing boundary point with the
lifted distributions.  Negative verdicts carry an independently verifiable
fan witness whenever one exists (set-theoretic prechecks carry none).
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .decompose import (
    SetDecomposition,
    complement_flags,
    decompose_set,
    is_closed_cellwise,
    is_open_cellwise,
    s_star_boundary_dim,
)
from .errors import BasixError, CountMismatch, Unsupported
from .fans import Fan, fan_count_in_S, witness_curve_fan, witness_point_fan
from .resolution import AnalysisPoint, classify_exceptional, local_analysis_points, resolve_point
from .scene import Scene, validate_scene
from .signdist import condition_a_check, condition_a_table
from .sphere import SphereModel, build_sphere_model, infinity_sigma_decomposition

F = Fraction

PROPERTIES = (
    "basic_open",
    "basic_closed",
    "generically_basic",
    "principal_open",
    "principal_closed",
)


@dataclass
class CheckRequest:
    scene: Scene
    property: str
    want_witness: bool = True
    trace_level: int = 0
    jobs: int = 1


@dataclass
class Verdict:
    property: str
    answer: str  # 'Yes' | 'No' | 'Unsupported'
    reason: str = ""
    witness: Fan | None = None
    witness_count: int | None = None
    diagnostics: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    trace: list[str] = field(default_factory=list)


def _timer():
    t0 = time.monotonic()
    marks = {}

    def mark(name: str):
        marks[name] = round((time.monotonic() - t0) * 1000, 2)

    return marks, mark


def run_check(req: CheckRequest) -> Verdict:
    fn = {
        "basic_open": check_basic_open,
        "basic_closed": check_basic_closed,
        "generically_basic": check_generically_basic,
        "principal_open": check_principal_open,
        "principal_closed": check_principal_closed,
    }[req.property]
    try:
        return fn(req.scene, want_witness=req.want_witness, jobs=req.jobs)
    except Unsupported as exc:
        return Verdict(req.property, "Unsupported", reason=f"{exc.reason}: {exc.detail}")


# ----------------------------------------------------------------- basic open


def check_basic_open(
    scene: Scene, want_witness: bool = True, jobs: int = 1, _allow_finite_meet: bool = False
) -> Verdict:
    prop = "generically_basic" if _allow_finite_meet else "basic_open"
    marks, mark = _timer()
    validate_scene(scene)
    model = build_sphere_model(scene)
    mark("model")
    d = model.affine.decomposition
    v = Verdict(prop, "Yes")
    v.timings = marks
    v.diagnostics["s_meets_boundary"] = d.s_meets_boundary
    v.diagnostics["zariski_boundary"] = sorted(d.zariski_boundary)
    v.diagnostics["components"] = len(d.a_components)

    if not is_open_cellwise(d):
        v.answer, v.reason = "No", "NotOpen"
        return v

    if d.s_meets_boundary == "one_dimensional":
        v.answer, v.reason = "No", "SetMeetsBoundary"
        v.diagnostics["note"] = (
            "the set meets its Zariski boundary in dimension one; even removing"
            " finitely many points cannot make it basic open"
        )
        return v
    if d.s_meets_boundary == "finite" and not _allow_finite_meet:
        v.answer, v.reason = "No", "SetMeetsBoundary"
        v.diagnostics["note"] = "finite boundary contact; the set is at best generically basic"
        v.diagnostics["meet_points"] = _meet_points(d)
        return v
    if d.s_meets_boundary == "finite":
        v.diagnostics["removed_points"] = _meet_points(d)

    # curve-level criterion over both charts
    fail = condition_a_check(d)
    v.diagnostics["condition_a_table"] = condition_a_table(d)
    if fail is None:
        inf_view = infinity_sigma_decomposition(model)
        v.diagnostics["condition_a_table_infinity"] = condition_a_table(inf_view)
        inf_fail = condition_a_check(inf_view)
        if inf_fail is not None:
            raise BasixError("curve criterion failed only at infinity: adjacency bug")
    mark("condition_a")
    if fail is not None:
        v.answer, v.reason = "No", "condition-a"
        v.diagnostics["failing_factor"] = fail.factor
        v.diagnostics["failing_sigma"] = fail.sigma_index
        if want_witness:
            cc = fail.classification
            fan = witness_curve_fan(d, fail.factor, cc.omega1_edges[0], cc.omega2_plus_edges[0])
            count = fan_count_in_S(fan, scene)
            if count != 3:
                raise CountMismatch(f"curve witness count {count} != 3")
            v.witness, v.witness_count = fan, count
        mark("witness")
        return v

    # blow-up criterion at every non-normal-crossing boundary point, both charts
    failure = _condition_b(model, v, jobs)
    mark("condition_b")
    if failure is not None:
        chart_name, D, cls = failure
        v.answer, v.reason = "No", "condition-b"
        v.diagnostics["failing_component_level"] = D.level
        v.diagnostics["failing_chart"] = chart_name
        if want_witness:
            dec = (
                model.affine.decomposition
                if chart_name == "affine"
                else infinity_sigma_decomposition(model)
            )
            o2 = cls.omega2_plus()
            o1 = cls.omega1()
            assert o2 is not None and o1 is not None
            fan = witness_point_fan(D, o2.v_mid, o1.v_mid, dec, expected_count=3)
            count = fan_count_in_S(fan, dec.arrangement.scene)
            if count != 3:
                raise CountMismatch(f"point witness count {count} != 3")
            v.witness, v.witness_count = fan, count
        mark("witness")
        return v
    return v


def _meet_points(d: SetDecomposition) -> list[list[str]]:
    arr = d.arrangement
    out = []
    for vid in sorted(d.s_vertices):
        vx = arr.vertices[vid]
        if vx.factors & d.zariski_boundary:
            pt = vx.point()
            out.append([str(pt[0]), str(pt[1])] if pt else ["algebraic", "algebraic"])
    return out


def _analysis_points_both_charts(model: SphereModel) -> list[tuple[str, AnalysisPoint]]:
    pts: list[tuple[str, AnalysisPoint]] = []
    aff = local_analysis_points(model.affine.decomposition)
    aff.sort(key=lambda ap: (ap.point is None, ap.point or (F(0), F(0))))
    pts.extend(("affine", ap) for ap in aff)
    # the only genuinely new point of the opposite chart is the pole (origin)
    inf_dec = model.infinity.decomposition
    for ap in local_analysis_points(inf_dec):
        if ap.point == (F(0), F(0)):
            pts.append(("infinity", ap))
    return pts


def _condition_b(model: SphereModel, v: Verdict, jobs: int = 1):
    exc_table: list = []
    v.diagnostics["resolution_points"] = []
    v.diagnostics["exceptional_table"] = exc_table
    inf_view: SetDecomposition | None = None
    for chart_name, ap in _analysis_points_both_charts(model):
        if not ap.rational:
            raise Unsupported(
                "NonRationalSingularPoint",
                f"boundary point with factors {ap.factors} has irrational coordinates",
            )
        chart = model.chart(chart_name)
        dec = chart.decomposition
        if chart_name == "infinity":
            if inf_view is None:
                inf_view = infinity_sigma_decomposition(model)
            dec = inf_view
        v.diagnostics["resolution_points"].append(
            {"chart": chart_name, "point": [str(ap.point[0]), str(ap.point[1])], "factors": ap.factors}
        )
        boundary_polys = {
            n: chart.scene.factors[n]
            for n in chart.scene.order
            if n in model.affine.decomposition.zariski_boundary and chart.scene.factors[n].eval(*ap.point) == 0
        }
        if not boundary_polys:
            continue
        tree = resolve_point(boundary_polys, ap.point)
        v.trace.extend(tree.trace)
        pairs = [(D, i) for D in tree.components for i in range(len(dec.a_components))]

        def job(pair):
            D, i = pair
            return D, i, classify_exceptional(D, dec, i)

        if jobs > 1:
            with ThreadPoolExecutor(max_workers=jobs) as ex:
                results = list(ex.map(job, pairs))
        else:
            results = [job(p) for p in pairs]
        for D, i, cls in results:
            exc_table.append(
                {"chart": chart_name, "level": D.level, "sigma": i, "verdict": cls.verdict}
            )
            if cls.verdict == "PositiveTypeChanging":
                return chart_name, D, cls
    return None


# ----------------------------------------------------------------- variants


def check_generically_basic(scene: Scene, want_witness: bool = True, jobs: int = 1) -> Verdict:
    return check_basic_open(scene, want_witness=want_witness, jobs=jobs, _allow_finite_meet=True)


def check_basic_closed(scene: Scene, want_witness: bool = True, jobs: int = 1) -> Verdict:
    marks, mark = _timer()
    validate_scene(scene)
    arr = decompose_set(build_sphere_model(scene).affine.arrangement)
    mark("closedness")
    if not is_closed_cellwise(arr):
        v = Verdict("basic_closed", "No", reason="NotClosed")
        v.timings = marks
        return v
    reduced = scene.minus_factor_zeros(arr.zariski_boundary)
    inner = check_basic_open(reduced, want_witness=want_witness, jobs=jobs)
    v = Verdict("basic_closed", inner.answer, reason=inner.reason, witness=inner.witness)
    v.witness_count = inner.witness_count
    v.diagnostics = {"reduced_check": inner.diagnostics, "zariski_boundary": sorted(arr.zariski_boundary)}
    v.timings = {**marks, **{f"open.{k}": t for k, t in inner.timings.items()}}
    return v


def check_principal_open(scene: Scene, want_witness: bool = True, jobs: int = 1) -> Verdict:
    marks, mark = _timer()
    validate_scene(scene)
    model = build_sphere_model(scene)
    d = model.affine.decomposition
    mark("model")
    v = Verdict("principal_open", "Yes")
    v.timings = marks
    if d.s_meets_boundary != "empty":
        v.answer, v.reason = "No", "SetMeetsBoundary"
        return v
    dim_s = s_star_boundary_dim(d)
    dc = decompose_set(d.arrangement, *complement_flags(d))
    dim_c = s_star_boundary_dim(dc)
    mark("dim_tests")
    v.diagnostics["interior_closure_dim"] = dim_s
    v.diagnostics["complement_interior_closure_dim"] = dim_c
    if dim_s != "one_dimensional" and dim_c != "one_dimensional":
        return v
    v.answer = "No"
    if dim_s == "one_dimensional":
        v.reason = "principal-set-side"
        fail = condition_a_check(d)
        assert fail is not None, "dimension test and sign criterion disagree"
        expected = 3
        dd = d
    else:
        v.reason = "principal-complement-side"
        fail = condition_a_check(dc)
        assert fail is not None, "dimension test and sign criterion disagree"
        expected = 1
        dd = dc
    if want_witness:
        cc = fail.classification
        fan = witness_curve_fan(dd, fail.factor, cc.omega1_edges[0], cc.omega2_plus_edges[0])
        count = fan_count_in_S(fan, scene)
        if count != expected:
            raise CountMismatch(f"principal witness count {count} != {expected}")
        v.witness, v.witness_count = fan, count
    mark("witness")
    return v


def _principal_witness_search(d: SetDecomposition, scene: Scene) -> tuple[Fan, int] | None:
    """Best-effort curve-centered fan with membership count 1 or 3, used when a
    set-theoretic precheck already settles the verdict."""
    arr = d.arrangement
    for factor in sorted(d.zariski_boundary):
        eids = [e.eid for e in arr.edges_of_factor(factor)]
        tried = 0
        for i in range(len(eids)):
            for j in range(len(eids)):
                if i == j or tried > 30:
                    continue
                tried += 1
                try:
                    fan = witness_curve_fan(d, factor, eids[i], eids[j])
                    count = fan_count_in_S(fan, scene)
                except (Unsupported, BasixError):
                    continue
                if count in (1, 3):
                    return fan, count
    return None


def check_principal_closed(scene: Scene, want_witness: bool = True, jobs: int = 1) -> Verdict:
    marks, mark = _timer()
    validate_scene(scene)
    d = decompose_set(build_sphere_model(scene).affine.arrangement)
    mark("precheck")
    # the Zariski boundary must avoid the complement
    meets = any(
        e.factor in d.zariski_boundary and e.eid not in d.s_edges for e in d.arrangement.edges
    ) or any(
        (vx.factors & d.zariski_boundary) and vx.vid not in d.s_vertices
        for vx in d.arrangement.vertices
    )
    if meets:
        v = Verdict("principal_closed", "No", reason="BoundaryMeetsComplement")
        if want_witness:
            found = _principal_witness_search(d, scene)
            if found is not None:
                v.witness, v.witness_count = found
        v.timings = marks
        return v
    comp = scene.complement()
    inner = check_principal_open(comp, want_witness=want_witness, jobs=jobs)
    v = Verdict("principal_closed", inner.answer, reason=inner.reason, witness=inner.witness)
    v.diagnostics = {"complement_check": inner.diagnostics}
    if inner.witness is not None:
        v.witness_count = fan_count_in_S(inner.witness, scene)
    v.timings = {**marks, **{f"comp.{k}": t for k, t in inner.timings.items()}}
    return v
