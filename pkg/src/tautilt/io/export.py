"""JSON, DOT and CSV renderings of pairs, pools and mutation quivers."""

from __future__ import annotations

import csv
import io
import json

from ..graph import MutationQuiver, SaturationEntry, saturation_report, tilting_subquiver
from ..indec import IndecPool
from ..tilting import ExchangeSequenceRecord, Pair


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def item_json(pool: IndecPool, item: tuple[str, int]) -> dict:
    kind, idx = item
    if kind == "module":
        return {"module": list(pool[idx].dim)}
    return {"projective": pool.quiver.vertices[idx]}


def pair_json(pool: IndecPool, pair: Pair, ident: int | None = None) -> dict:
    out = {
        "summand_dims": [list(d) for d in pair.dims(pool)],
        "support": [pool.quiver.vertices[v] for v in pair.support],
        "is_tau_tilting": not pair.support,
    }
    if ident is not None:
        out["id"] = ident
    return out


def pairs_json(pool: IndecPool, pairs: list[Pair]) -> dict:
    return {"algebra": pool.quiver.name, "exhaustive": pool.exhaustive, "count": len(pairs),
            "pairs": [pair_json(pool, p, i) for i, p in enumerate(pairs)]}


def pairs_csv(pool: IndecPool, pairs: list[Pair]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["id", "summand_dims", "support", "is_tau_tilting"])
    for i, p in enumerate(pairs):
        w.writerow([i, " ".join(",".join(map(str, d)) for d in p.dims(pool)),
                    " ".join(pool.quiver.vertices[v] for v in p.support), int(not p.support)])
    return buf.getvalue()


def record_json(pool: IndecPool, rec: ExchangeSequenceRecord) -> dict:
    return {
        "direction": rec.direction,
        "removed": item_json(pool, rec.removed),
        "added": item_json(pool, rec.added),
        "sequence_start": list(pool[rec.x].dim) if rec.x is not None else None,
        "approximation_target": [list(pool[j].dim) for j in sorted(rec.middle.elements())],
        "cokernel": [list(pool[j].dim) for j in sorted(rec.cokernel.elements())],
        "exact": rec.is_exact(),
    }


def _saturation(mq: MutationQuiver) -> dict[Pair, SaturationEntry]:
    tq = mq if all(mq.tilting) else tilting_subquiver(mq)
    return {e.pair: e for e in saturation_report(tq)}


def graph_json(mq: MutationQuiver) -> dict:
    pool = mq.pool
    sat = _saturation(mq)
    vertices = []
    for i, p in enumerate(mq.vertices):
        v = pair_json(pool, p, i)
        v["is_tilting"] = mq.tilting[i]
        v["saturated"] = sat[p].saturated if p in sat else None
        vertices.append(v)
    edges = [{"from": e.source, "to": e.target,
              "exchanged": [item_json(pool, e.removed), item_json(pool, e.added)]} for e in mq.edges]
    return {"algebra": pool.quiver.name, "exhaustive": mq.exhaustive, "depth": mq.depth,
            "frontier": sorted(mq.frontier), "vertices": vertices, "edges": edges}


def _dot_label(pool: IndecPool, p: Pair) -> str:
    lines = ["(" + ",".join(map(str, d)) + ")" for d in p.dims(pool)]
    lines += [f"P{pool.quiver.vertices[v]}[1]" for v in p.support]
    return "\\n".join(lines) or "0"


def graph_dot(mq: MutationQuiver) -> str:
    pool = mq.pool
    sat = _saturation(mq)
    out = [f'digraph "{pool.quiver.name}" {{', "  node [shape=box];"]
    for i, p in enumerate(mq.vertices):
        attrs = [f'label="{_dot_label(pool, p)}"']
        if p.support:
            attrs.append("style=dashed")
        if p in sat and sat[p].saturated is False:
            attrs += ["color=red", "penwidth=2"]
        if i in mq.frontier:
            attrs.append("peripheries=2")
        out.append(f"  v{i} [{', '.join(attrs)}];")
    for e in mq.edges:
        out.append(f"  v{e.source} -> v{e.target};")
    out.append("}")
    return "\n".join(out) + "\n"


def edges_csv(mq: MutationQuiver) -> str:
    pool = mq.pool
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["from", "to", "from_label", "to_label"])
    for e in mq.edges:
        w.writerow([e.source, e.target, mq.vertices[e.source].label(pool), mq.vertices[e.target].label(pool)])
    return buf.getvalue()
