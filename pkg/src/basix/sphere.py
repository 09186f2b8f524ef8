"""Two-chart sphere model: the affine scene plus its inverted image.

The sphere is the affine plane compactified by a single pole; the opposite
stereographic chart is realised by the inversion substitution.  Complement
components are computed in the affine chart (they are sphere components, since
the compactification adds one point) and transported to the other chart by
sample-point inversion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arrangement import Arrangement, build_arrangement
from .decompose import SetDecomposition, decompose_set
from .errors import Unsupported
from .scene import Scene, invert_scene

F = Fraction


@dataclass
class ChartData:
    scene: Scene
    arrangement: Arrangement
    decomposition: SetDecomposition


@dataclass
class SphereModel:
    affine: ChartData
    infinity: ChartData
    # region id in the infinity chart -> ('S',) | ('A', affine component) | ('none',)
    transport: dict[int, tuple] = field(default_factory=dict)
    pole_in_closure: bool = False
    pole_on_boundary_curve: bool = False

    def chart(self, name: str) -> ChartData:
        return self.affine if name == "affine" else self.infinity


def build_sphere_model(scene: Scene) -> SphereModel:
    arr = build_arrangement(scene)
    dec = decompose_set(arr)
    inv = invert_scene(scene)
    arr_i = build_arrangement(inv)
    dec_i = decompose_set(arr_i)
    model = SphereModel(ChartData(scene, arr, dec), ChartData(inv, arr_i, dec_i))

    # transport infinity-chart regions through the inversion
    for r in arr_i.regions:
        x, y = r.sample
        if x == 0 and y == 0:
            x, y = _nonpole_sample(arr_i, r)
        q = x * x + y * y
        px, py = x / q, y / q
        rid = arr.region_of_point(px, py)
        if rid in dec.s_regions:
            model.transport[r.rid] = ("S",)
        elif rid in dec.a_of_region:
            model.transport[r.rid] = ("A", dec.a_of_region[rid])
        else:
            model.transport[r.rid] = ("none",)

    model.pole_in_closure = any(
        arr.regions[rid].unbounded for rid in dec.s_regions
    ) or any(arr.edges[eid].unbounded for eid in dec.s_edges)
    model.pole_on_boundary_curve = any(
        arr.edges[eid].unbounded for eid in range(len(arr.edges)) if arr.edges[eid].factor in dec.zariski_boundary
    )
    return model


def _nonpole_sample(arr, region) -> tuple[Fraction, Fraction]:
    """A rational point of the region different from the chart origin."""
    from .arrangement import loc_bounds
    from .realroots import simplest_in

    for s, g in region.gaps:
        x, y = arr._gap_sample(s, g)
        if (x, y) != (F(0), F(0)):
            return x, y
    # single gap sampled exactly at the origin: 0 is interior, nudge upward
    s, g = region.gaps[0]
    x = arr.slab_samples[s]
    st = arr.stacks[s]
    hi = loc_bounds(st[g][2])[0] if g < len(st) else None
    y = simplest_in(F(0), hi) if hi is not None else F(1)
    return x, y


def infinity_sigma_decomposition(model: SphereModel) -> SetDecomposition:
    """A decomposition-like view of the infinity chart whose component indices
    agree with the affine complement components (for lifted distributions)."""
    dec_i = model.infinity.decomposition
    # remap a_of_region to affine component ids
    remap: dict[int, int] = {}
    for rid, tag in model.transport.items():
        if tag[0] == "A":
            remap[rid] = tag[1]
    view = SetDecomposition(dec_i.arrangement)
    view.s_regions = {rid for rid, tag in model.transport.items() if tag[0] == "S"}
    view.s_edges = dec_i.s_edges
    view.s_vertices = dec_i.s_vertices
    view.boundary_edges = dec_i.boundary_edges
    view.zariski_boundary = dec_i.zariski_boundary
    n_aff = len(model.affine.decomposition.a_components)
    comps: list[set[int]] = [set() for _ in range(n_aff)]
    for rid, i in remap.items():
        comps[i].add(rid)
    view.a_components = comps
    view.a_of_region = dict(remap)
    view.s_meets_boundary = dec_i.s_meets_boundary
    return view
