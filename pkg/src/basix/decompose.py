"""Set-level structure on top of an arrangement.

Splits the cells of an arrangement by membership, computes the Zariski
boundary (factors carrying boundary edges), the connected components of the
complement of S union its Zariski boundary, and the cell-wise interior /
closure operators used by the dimension prechecks.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .arrangement import Arrangement, Edge

F = Fraction


@dataclass
class SetDecomposition:
    arrangement: Arrangement
    # membership flags by cell
    s_regions: set[int] = field(default_factory=set)
    s_edges: set[int] = field(default_factory=set)
    s_vertices: set[int] = field(default_factory=set)
    # derived structure
    boundary_edges: set[int] = field(default_factory=set)
    zariski_boundary: set[str] = field(default_factory=set)
    a_components: list[set[int]] = field(default_factory=list)  # region ids per component
    a_of_region: dict[int, int] = field(default_factory=dict)
    s_meets_boundary: str = "empty"  # 'empty' | 'finite' | 'one_dimensional'
    boundary_vertex_ids: set[int] = field(default_factory=set)
    isolated_boundary_factors: set[str] = field(default_factory=set)

    # ---------------------------------------------------------------- queries

    def region_sign(self, rid: int, a_index: int) -> int:
        """+1 on S, -1 on the chosen complement component, 0 otherwise."""
        if rid in self.s_regions:
            return 1
        if self.a_of_region.get(rid) == a_index:
            return -1
        return 0

    def edge_in_closure(self, e: Edge) -> bool:
        return e.eid in self.s_edges or e.side_above in self.s_regions or e.side_below in self.s_regions

    def edge_in_interior(self, e: Edge) -> bool:
        return e.eid in self.s_edges and e.side_above in self.s_regions and e.side_below in self.s_regions


def decompose_set(
    arr: Arrangement,
    region_flags: dict[int, bool] | None = None,
    edge_flags: dict[int, bool] | None = None,
    vertex_flags: dict[int, bool] | None = None,
) -> SetDecomposition:
    """Decompose the scene's set (or an explicit cell-flag assignment).

    Passing explicit flags supports derived sets (complements, reductions)
    over the same arrangement without re-evaluating formulas.
    """
    d = SetDecomposition(arr)
    if region_flags is None:
        region_flags = {r.rid: r.member for r in arr.regions}
    if edge_flags is None:
        edge_flags = {e.eid: e.member for e in arr.edges}
    if vertex_flags is None:
        vertex_flags = {v.vid: arr.vertex_member(v) for v in arr.vertices}
    d.s_regions = {rid for rid, m in region_flags.items() if m}
    d.s_edges = {eid for eid, m in edge_flags.items() if m}
    d.s_vertices = {vid for vid, m in vertex_flags.items() if m}

    # boundary edges: in the closure of S but not in its interior
    for e in arr.edges:
        closure = d.edge_in_closure(e)
        interior = d.edge_in_interior(e)
        if closure and not interior:
            d.boundary_edges.add(e.eid)
    d.zariski_boundary = {arr.edges[eid].factor for eid in d.boundary_edges}

    # boundary vertices (diagnostic; includes isolated boundary points)
    for v in arr.vertices:
        in_closure = (
            v.vid in d.s_vertices
            or any(eid in d.s_edges for eid in arr.edges_at_vertex(v.vid))
            or any(r in d.s_regions for r in arr.regions_at_vertex(v.vid))
        )
        interior = (
            v.vid in d.s_vertices
            and all(eid in d.s_edges for eid in arr.edges_at_vertex(v.vid))
            and all(r in d.s_regions for r in arr.regions_at_vertex(v.vid))
        )
        if in_closure and not interior:
            d.boundary_vertex_ids.add(v.vid)
            if not (v.factors & d.zariski_boundary):
                d.isolated_boundary_factors.update(v.factors)

    # S meets its Zariski boundary: cells of S on boundary factors
    one_dim = any(arr.edges[eid].factor in d.zariski_boundary for eid in d.s_edges)
    finite = any(
        bool(arr.vertices[vid].factors & d.zariski_boundary) for vid in d.s_vertices
    )
    d.s_meets_boundary = "one_dimensional" if one_dim else ("finite" if finite else "empty")

    # components of X minus (S union zariski boundary): merge complement
    # regions across edges neither in S nor on a boundary factor
    parent: dict[int, int] = {r.rid: r.rid for r in arr.regions if r.rid not in d.s_regions}

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in arr.edges:
        if e.eid in d.s_edges or e.factor in d.zariski_boundary:
            continue
        a, b = e.side_above, e.side_below
        if a in parent and b in parent:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    comps: dict[int, set[int]] = {}
    for rid in parent:
        comps.setdefault(find(rid), set()).add(rid)
    d.a_components = [comps[k] for k in sorted(comps, key=lambda k: min(comps[k]))]
    for i, comp in enumerate(d.a_components):
        for rid in comp:
            d.a_of_region[rid] = i
    return d


def complement_flags(d: SetDecomposition) -> tuple[dict[int, bool], dict[int, bool], dict[int, bool]]:
    """Cell flags of the OPEN complement X minus (S union zariski boundary)."""
    arr = d.arrangement
    rf = {r.rid: r.rid not in d.s_regions for r in arr.regions}
    ef = {
        e.eid: (e.eid not in d.s_edges) and (e.factor not in d.zariski_boundary)
        for e in arr.edges
    }
    vf = {
        v.vid: (v.vid not in d.s_vertices) and not (v.factors & d.zariski_boundary)
        for v in arr.vertices
    }
    return rf, ef, vf


def set_complement_flags(d: SetDecomposition) -> tuple[dict[int, bool], dict[int, bool], dict[int, bool]]:
    """Cell flags of X minus S (the plain complement)."""
    arr = d.arrangement
    rf = {r.rid: r.rid not in d.s_regions for r in arr.regions}
    ef = {e.eid: e.eid not in d.s_edges for e in arr.edges}
    vf = {v.vid: v.vid not in d.s_vertices for v in arr.vertices}
    return rf, ef, vf


def is_open_cellwise(d: SetDecomposition) -> bool:
    """S is open iff every member cell has its full neighbourhood in S."""
    arr = d.arrangement
    for eid in d.s_edges:
        e = arr.edges[eid]
        if e.side_above not in d.s_regions or e.side_below not in d.s_regions:
            return False
    for vid in d.s_vertices:
        if any(eid not in d.s_edges for eid in arr.edges_at_vertex(vid)):
            return False
        if any(r not in d.s_regions for r in arr.regions_at_vertex(vid)):
            return False
    return True


def is_closed_cellwise(d: SetDecomposition) -> bool:
    """S is closed (in the affine chart) iff it contains the boundary cells of
    all its cells.  The pole is deliberately not considered."""
    arr = d.arrangement
    for rid in d.s_regions:
        for e in arr.edges:
            if rid in e.sides() and e.eid not in d.s_edges:
                return False
    touched: set[int] = set()
    for eid in d.s_edges:
        e = arr.edges[eid]
        for end in e.ends:
            if end and end[0] == "vertex":
                touched.add(end[1])
    for rid in d.s_regions:
        for v in arr.vertices:
            if rid in arr.regions_at_vertex(v.vid):
                touched.add(v.vid)
    return all(vid in d.s_vertices for vid in touched)


def s_star_flags(d: SetDecomposition) -> tuple[set[int], set[int], set[int]]:
    """Cell flags of Int(closure(S)): member regions, edges with both sides in
    S, vertices with every incident cell in the closure's interior."""
    arr = d.arrangement
    regs = set(d.s_regions)
    edges = {
        e.eid
        for e in arr.edges
        if e.side_above in d.s_regions and e.side_below in d.s_regions
    }
    verts = set()
    for v in arr.vertices:
        if all(r in regs for r in arr.regions_at_vertex(v.vid)) and all(
            eid in edges for eid in arr.edges_at_vertex(v.vid)
        ) and arr.regions_at_vertex(v.vid):
            verts.add(v.vid)
    return regs, edges, verts


def s_star_boundary_dim(d: SetDecomposition) -> str:
    """Dimension class of Int(closure(S)) intersected with its own Zariski
    boundary: 'empty', 'finite' or 'one_dimensional'."""
    arr = d.arrangement
    regs, edges, verts = s_star_flags(d)

    # Zariski boundary of S*: factors owning an edge in closure(S*) \ S*
    zb: set[str] = set()
    for e in arr.edges:
        in_closure = e.eid in edges or e.side_above in regs or e.side_below in regs
        if in_closure and e.eid not in edges:
            zb.add(e.factor)
    if any(arr.edges[eid].factor in zb for eid in edges):
        return "one_dimensional"
    for vid in verts:
        if arr.vertices[vid].factors & zb:
            return "finite"
    return "empty"
