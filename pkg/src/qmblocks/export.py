"""JSON and DOT output."""
from __future__ import annotations

import json
from typing import Any

from .alignment import RecodingReport
from .decomposition import DecompositionState, induced_partitions
from .oracle import QuasiMedianGraph
from .partitions import NscGraph, PartitionSystem, iter_bits


def extra_vertex_names(state: DecompositionState) -> dict[int, str]:
    """Surviving extra vertices numbered e1, e2, ... in creation order."""
    return {vid: f"e{k}" for k, vid in enumerate(sorted(state.extra_vertices), start=1)}


def decomposition_document(
    system: PartitionSystem,
    state: DecompositionState,
    report: RecodingReport | None = None,
) -> dict[str, Any]:
    """The JSON-ready form of a decomposition. Ids and column numbers start at 1."""
    ground = system.ground
    names = extra_vertex_names(state)
    blocks = sorted(state.blocks.values(), key=lambda b: min(b.parts))
    block_index = {b.id: k for k, b in enumerate(blocks, start=1)}

    out_blocks = []
    for k, block in enumerate(blocks, start=1):
        induced = induced_partitions(state, block)
        token_names = [
            ground.elements[i] if kind == "x" else names[i] for kind, i in induced.tokens
        ]
        out_blocks.append(
            {
                "id": k,
                "partitions": [pid + 1 for pid in sorted(block.parts)],
                "X": ground.names(block.x_mask),
                "S": [names[v] for v in sorted(block.members_s)],
                "directions": {names[v]: ground.elements[x] for v, x in sorted(block.directions.items())},
                "induced": [
                    {
                        "partition": p.id + 1,
                        "parts": [[token_names[i] for i in iter_bits(mask)] for mask in p.parts],
                    }
                    for p in induced.partitions
                ],
            }
        )
    extras = [
        {"name": names[vid], "blocks": sorted(block_index[b] for b in v.incident_blocks)}
        for vid, v in sorted(state.extra_vertices.items())
    ]
    partitions = [
        {
            "id": p.id + 1,
            "parts": [ground.names(mask) for mask in p.parts],
            "multiplicity": system.multiplicity[p.id],
            "columns": [c + 1 for c in system.source_columns[p.id]],
        }
        for p in system.partitions
    ]
    rep: dict[str, Any] = {
        "n": ground.n,
        "m": system.m,
        "blocks": len(blocks),
        "extra_vertices": len(extras),
    }
    if report is not None:
        rep.update(
            kept_columns=[c + 1 for c in report.kept_columns],
            dropped_constant_columns=[c + 1 for c in report.dropped_constant_columns],
            dropped_gap_columns=[c + 1 for c in report.dropped_gap_columns],
            merged_duplicates={str(k + 1): [c + 1 for c in v] for k, v in report.merged_duplicates.items()},
            warnings=list(report.warnings),
        )
    return {
        "ground": list(ground.elements),
        "partitions": partitions,
        "blocks": out_blocks,
        "extra_vertices": extras,
        "report": rep,
    }


def dumps(document: dict[str, Any]) -> str:
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def column_label(system: PartitionSystem, pid: int) -> str:
    cols = system.source_columns.get(pid) or []
    return ",".join(str(c + 1) for c in cols) if cols else f"P{pid}"


def nsc_dot(system: PartitionSystem, graph: NscGraph) -> str:
    lines = ["graph nsc {"]
    for v in graph.vertices:
        lines.append(f"  {_quote(column_label(system, v))};")
    for a, b in graph.edges:
        lines.append(f"  {_quote(column_label(system, a))} -- {_quote(column_label(system, b))};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def qmgraph_dot(g: QuasiMedianGraph) -> str:
    """Labelled vertices are named by their sorted element names, the rest e1, e2, ..."""
    ground = g.system.ground
    names = {}
    k = 0
    for v in range(len(g.vertices)):
        if v in g.labels:
            names[v] = ",".join(ground.elements[x] for x in sorted(g.labels[v]))
        else:
            k += 1
            names[v] = f"e{k}"
    lines = ["graph quasi_median {"]
    for v in range(len(g.vertices)):
        style = "" if v in g.labels else " [shape=point]"
        lines.append(f"  {_quote(names[v])}{style};")
    for a, b, pid in g.edges:
        lines.append(
            f"  {_quote(names[a])} -- {_quote(names[b])} [label={_quote(column_label(g.system, pid))}, partition={pid}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
