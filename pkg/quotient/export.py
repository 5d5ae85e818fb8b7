"""DOT export of a quotient graph; cusp rays are collapsed into one annotated node each."""

import os
from typing import *

from quotient.graph import QuotientGraph

BODY = """
digraph {

    node [
        shape = circle
        width = 0.3
        height = 0.3
        fontsize = 9
    ]
    edge [ penwidth = 1.5 ]

%s

}
"""


def _vertex_name(vid) -> str:
    return '"%d:%d"' % vid


def to_dot(graph: QuotientGraph) -> str:
    core = graph.core_depth
    lines = []
    for layer in graph.vertex_orbits[:core]:
        for v in layer:
            lines.append('  %s [label="%d:%d\\nstab %d\\nstar %d"];' % (_vertex_name(v.id), v.layer, v.index, v.stabilizer,
                                                                          graph.star_sum(v.id)))
    for v in graph.vertex_orbits[core]:
        lines.append('  %s [shape=box, label="cusp %d\\nwidth %d"];' % (_vertex_name(v.id), v.index, v.size))
    for layer in graph.edge_orbits[:core]:
        for e in layer:
            origin, terminus = graph.origin(e.id), graph.terminus(e.id)
            w = graph.weight(terminus, e.id)
            lines.append('  %s -> %s [label="%d"];' % (_vertex_name(origin), _vertex_name(terminus), w))
    return BODY % '\n'.join(lines)


def write_dot(graph: QuotientGraph, path: str) -> str:
    os.makedirs(os.path.dirname(path) or '.', exist_ok=True)
    with open(path, 'w') as f:
        print(to_dot(graph), file=f)
    return path
