"""Graphviz DOT export for state transition graphs and interaction graphs."""
from __future__ import annotations

from .dynamics import AsyncDynamics
from .interaction import SignedDigraph, format_vertex


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _dynamics_lines(ad: AsyncDynamics):
    space = ad.space
    lines = []
    for r in ad.vertex_ranks().tolist():
        lines.append(f"  s{r} [label={_quote(space.format_state(space.unrank(r)))}];")
    src, dst = ad.edge_arrays()
    for s, d in zip(src.tolist(), dst.tolist()):
        lines.append(f"  s{s} -> s{d};")
    return lines


def _signed_lines(g: SignedDigraph):
    pos = {v: k for k, v in enumerate(g.vertices)}
    lines = [f"  v{k} [label={_quote(format_vertex(v))}];" for k, v in enumerate(g.vertices)]
    for s, t, sg in sorted(g.edges, key=lambda e: (pos[e[0]], pos[e[1]], -e[2])):
        style = ', style="dashed"' if sg < 0 else ""
        lines.append(f'  v{pos[s]} -> v{pos[t]} [label="{"+" if sg > 0 else "-"}"{style}];')
    return lines


def export_dot(graph, name: str = "G", rankdir: str | None = None) -> str:
    """DOT text for an :class:`AsyncDynamics` or a :class:`SignedDigraph`.

    Output is deterministic: vertices in rank (or component) order, edges
    sorted by source then target.  Negative edges are dashed.
    """
    if isinstance(graph, AsyncDynamics):
        body = _dynamics_lines(graph)
    elif isinstance(graph, SignedDigraph):
        body = _signed_lines(graph)
    else:
        raise TypeError(f"cannot export {type(graph).__name__}")
    head = [f"digraph {_quote(name)} {{"]
    if rankdir:
        head.append(f"  rankdir={rankdir};")
    return "\n".join(head + body + ["}"]) + "\n"
