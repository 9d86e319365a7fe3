"""Deterministic DOT rendering of hypergraphs.

Inputs are triangles ranked first, outputs inverted triangles ranked last,
edges boxes; everything is emitted in declaration order so the output is
byte-identical across runs.
"""
from __future__ import annotations

from . import hypergraph as hg


def _node(ref: hg.NodeRef) -> str:
    if isinstance(ref, hg.Input):
        return f"i{ref.index}"
    return f"n{ref.index}"


def render(g: hg.Hypergraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{", "  rankdir=TB;"]
    if g.m:
        lines.append("  { rank=source;")
        for i in range(g.m):
            lines.append(f'    i{i} [shape=triangle label="i{i}"];')
        lines.append("  }")
    for j in range(g.inner_count):
        lines.append(f'  n{j} [shape=ellipse label="n{j}"];')
    for index, edge in enumerate(g.edges):
        lines.append(f'  e{index} [shape=box label="{edge.label.name}"];')
        for pos, ref in enumerate(edge.inputs):
            lines.append(f'  {_node(ref)} -> e{index} [label="{pos}"];')
        lines.append(f"  e{index} -> n{edge.out};")
    if g.output:
        lines.append("  { rank=sink;")
        for k in range(g.n):
            lines.append(f'    o{k} [shape=invtriangle label="o{k}"];')
        lines.append("  }")
        for k, ref in enumerate(g.output):
            lines.append(f"  {_node(ref)} -> o{k};")
    lines.append("}")
    return "\n".join(lines) + "\n"
