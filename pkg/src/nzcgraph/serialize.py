"""Graph serialization: JSON dict schema and DOT output for the CLI."""

from __future__ import annotations

from . import vectorspace as vs
from .graph import NzcGraph


def graph_to_dict(g: NzcGraph) -> dict:
    """JSON-ready dict: n, q, vertices (id/coeffs/skeleton/class), edges, twin sets."""
    return {
        "n": g.params.n,
        "q": g.params.q,
        "vertices": [
            {
                "id": v,
                "coeffs": list(g.vertices[v]),
                "skeleton": list(vs.skeleton_indices(g.skeletons[v])),
                "class": g.class_of(v),
            }
            for v in range(g.num_vertices)
        ],
        "edges": [[u, w] for u, w in g.edges()],
        "twin_sets": [list(ts) for ts in g.twin_sets()],
    }


def graph_from_dict(data: dict, vertex_cap: int = vs.DEFAULT_VERTEX_CAP) -> NzcGraph:
    """Reconstruct a graph from the dict schema, validating consistency."""
    params = vs.SpaceParams(int(data["n"]), int(data["q"]), vertex_cap)
    entries = sorted(data["vertices"], key=lambda e: e["id"])
    if [e["id"] for e in entries] != list(range(params.num_vertices)):
        raise ValueError("vertex ids are not the contiguous canonical range")
    vertices = []
    skeletons = []
    for e in entries:
        coeffs = tuple(int(c) for c in e["coeffs"])
        if vs.vector_id(params, coeffs) != e["id"]:
            raise ValueError(f"vertex {e['id']} is out of canonical order")
        mask = vs.skeleton(coeffs)
        if vs.mask_from_indices(e["skeleton"]) != mask:
            raise ValueError(f"vertex {e['id']}: skeleton does not match coefficients")
        if e["class"] != mask.bit_count():
            raise ValueError(f"vertex {e['id']}: class does not match skeleton size")
        vertices.append(coeffs)
        skeletons.append(mask)
    adj = [0] * params.num_vertices
    for u, w in data["edges"]:
        if u == w:
            raise ValueError("self-loop in edge list")
        adj[u] |= 1 << w
        adj[w] |= 1 << u
    return NzcGraph(params, vertices, skeletons, adj)


def graphs_equal(a: NzcGraph, b: NzcGraph) -> bool:
    """Same parameters, vertex order, adjacency and twin ordering."""
    return (a.params.n == b.params.n and a.params.q == b.params.q
            and a.vertices == b.vertices and a.adj == b.adj
            and a.twin_sets() == b.twin_sets())


def graph_to_dot(g: NzcGraph) -> str:
    """Undirected DOT with vertex labels like "b1+b3"."""
    lines = ["graph nzc {"]
    for v in range(g.num_vertices):
        lines.append(f'  v{v} [label="{vs.format_vector(g.vertices[v])}"];')
    for u, w in g.edges():
        lines.append(f"  v{u} -- v{w};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_table(g: NzcGraph) -> str:
    """Plain-text summary used by the CLI's table format."""
    lines = [
        f"n={g.params.n} q={g.params.q}: {g.num_vertices} vertices, "
        f"{g.edge_count()} edges, {len(g.twin_sets())} twin sets",
        f"{'id':>4}  {'vector':<18} {'skeleton':<14} class degree",
    ]
    for v in range(g.num_vertices):
        skel = ",".join(str(i) for i in vs.skeleton_indices(g.skeletons[v]))
        lines.append(
            f"{v:>4}  {vs.format_vector(g.vertices[v]):<18} {{{skel}}}"
            f"{'':<{max(0, 12 - len(skel))}} {g.class_of(v):>5} {g.degree(v):>6}"
        )
    return "\n".join(lines) + "\n"
