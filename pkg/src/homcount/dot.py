"""DOT text rendering for orientations, decomposition trees, and certificates."""

from __future__ import annotations

from .graph import OrientedGraph
from .pattern import DagTreeDecomposition, HardnessCertificate


def orientation_dot(h: OrientedGraph, name: str = "orientation") -> str:
    lines = [f"digraph {name} {{"]
    for v in range(h.vertex_count):
        lines.append(f'  {v} [label="{h.base.label_of(v)}"];')
    for u in range(h.vertex_count):
        for w in h.out_neighbors[u]:
            lines.append(f"  {u} -> {w};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def decomposition_dot(t: DagTreeDecomposition, name: str = "decomposition") -> str:
    lines = [f"graph {name} {{", "  node [shape=box];"]
    for i, bag in enumerate(t.bags):
        label = "{" + ",".join(map(str, sorted(bag))) + "}"
        lines.append(f'  n{i} [label="{label}"];')
    for i, parent in enumerate(t.parent):
        if parent is not None:
            sep = ",".join(map(str, sorted(t.separators[i] or ())))
            lines.append(f'  n{parent} -- n{i} [label="{sep}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def certificate_dot(cert: HardnessCertificate, name: str = "certificate") -> str:
    h = cert.orientation
    triangle = set(cert.triangle)
    witnesses = set(cert.witnesses)
    lines = [f"digraph {name} {{"]
    for v in range(h.vertex_count):
        attrs = [f'label="{h.base.label_of(v)}"']
        if v in triangle:
            attrs.append("shape=doublecircle")
        elif v in witnesses:
            attrs.append("shape=box")
        lines.append(f"  {v} [{', '.join(attrs)}];")
    for u in range(h.vertex_count):
        for w in h.out_neighbors[u]:
            lines.append(f"  {u} -> {w};")
    lines.append("}")
    return "\n".join(lines) + "\n"
