#!/usr/bin/env python3
# SPDX-License-Identifier: Apache-2.0
# Copyright 2026 The cegocd Authors
"""Brute-force reference values for the toy knowledge graph.

Everything here is computed the slow, obvious way (full DFS, full
eigendecomposition, exhaustive partition search) and written to
fixtures/manifest.json.  The C++ tests compare against that file.

usage: regenerate_manifest.py [--graph PATH] [--out PATH]
"""

import argparse
import itertools
import json
import math
import re
from pathlib import Path

import numpy as np

HERE = Path(__file__).resolve().parent
FIXTURES = HERE.parent

SCRIPTED_QUERY = "attention models for question answering and summarization benchmarks"
TARGET_TYPES = ["Dataset", "Task"]
TITLE = "Title"
COMPLETION_TYPES = ["similar_to", "related_method", "related_task"]
MAX_HOPS = 5
MAX_PATHS = 10
TOP_K = 10

M64 = (1 << 64) - 1


# graph ---------------------------------------------------------------------

def load_graph(path):
    entities, rels = {}, []
    for line in Path(path).read_text().splitlines():
        if not line.strip():
            continue
        rec = json.loads(line)
        if rec["kind"] == "entity":
            entities[rec["id"]] = rec
        else:
            rels.append((rec["source"], rec["target"], rec["type"]))
    self_loops = sum(1 for s, t, _ in rels if s == t)
    edges = sorted({r for r in rels if r[0] != r[1]})
    duplicates = len([r for r in rels if r[0] != r[1]]) - len(edges)
    return entities, edges, self_loops, duplicates


def incident(edges, node, allowed=None):
    out = []
    for e in edges:
        if allowed is not None and e[2] not in allowed:
            continue
        if e[0] == node:
            out.append((e[1], e))
        elif e[1] == node:
            out.append((e[0], e))
    return out


# tf-idf --------------------------------------------------------------------

def tokens(text):
    raw = re.findall(rb"[A-Za-z0-9]+", text.encode("utf-8"))
    return [t.decode().lower() for t in raw if len(t) >= 2]


def document(e):
    parts = [e["name"], *e.get("aliases", [])]
    if e.get("description"):
        parts.append(e["description"])
    return " ".join(parts)


def tfidf_top(entities, keyword, k):
    ids = sorted(entities)
    docs = {i: tokens(document(entities[i])) for i in ids}
    vocab = sorted({t for d in docs.values() for t in d})
    df = {t: sum(1 for d in docs.values() if t in d) for t in vocab}
    n = len(ids)
    idf = {t: math.log(1.0 + n / df[t]) for t in vocab}

    def vec(toks):
        v = {}
        for t in toks:
            if t in idf:
                v[t] = v.get(t, 0.0) + idf[t]
        return v

    q = vec(tokens(keyword))
    qn = math.sqrt(sum(x * x for x in q.values()))
    scored = []
    for i in ids:
        d = vec(docs[i])
        dn = math.sqrt(sum(x * x for x in d.values()))
        if qn == 0 or dn == 0:
            continue
        s = sum(q[t] * d.get(t, 0.0) for t in q) / (qn * dn)
        if s > 0:
            scored.append((i, s))
    scored.sort(key=lambda p: (-round(p[1], 12), p[0]))
    return scored[:k], len(vocab)


# mock providers --------------------------------------------------------------

def fnv1a64(text):
    h = 0xCBF29CE484222325
    for b in text.encode("utf-8"):
        h ^= b
        h = (h * 0x100000001B3) & M64
    return h


def splitmix64(x):
    x = (x + 0x9E3779B97F4A7C15) & M64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & M64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & M64
    return x ^ (x >> 31)


def mock_embed(text):
    h = fnv1a64(text)
    v = np.array([2.0 * ((splitmix64(h ^ ((0x9E3779B97F4A7C15 * (i + 1)) & M64)) >> 11) * 2.0 ** -53) - 1.0
                  for i in range(32)])
    return v / np.linalg.norm(v)


def mock_keywords(query):
    out = []
    for t in tokens(query):
        if len(t) >= 4 and t not in out:
            out.append(t)
    return out


def verbal(entities, s, rel, t):
    return f"{entities[s]['name']} {rel.replace('_', ' ')} {entities[t]['name']}"


def semantic(text, keywords):
    v = mock_embed(text)
    best = 0.0
    for k in keywords:
        c = float(np.dot(v, mock_embed(k)) / (np.linalg.norm(v) * np.linalg.norm(mock_embed(k))))
        best = max(best, min(1.0, max(0.0, (c + 1.0) / 2.0)))
    return best


# paths -----------------------------------------------------------------------

def all_paths(edges, a, b, allowed, max_hops):
    found = []

    def dfs(node, nodes, used):
        if node == b:
            found.append((list(nodes), [e[2] for e in used]))
            return
        if len(used) == max_hops:
            return
        for nxt, e in incident(edges, node, allowed):
            if nxt in nodes:
                continue
            nodes.append(nxt)
            used.append(e)
            dfs(nxt, nodes, used)
            used.pop()
            nodes.pop()

    dfs(a, [a], [])
    found.sort(key=lambda p: (len(p[1]), p[0], p[1]))
    return found


def path_edges(edges, nodes, types):
    out = []
    for (x, y), t in zip(zip(nodes, nodes[1:]), types):
        out.append((x, y, t) if (x, y, t) in edges else (y, x, t))
    return out


# retrieval -------------------------------------------------------------------

def title_neighborhood(entities, edges, relevant, targets):
    nodes, sub = set(), set()
    titles = set()
    for r in relevant:
        if entities[r]["type"] == TITLE:
            nodes.add(r)
            titles.add(r)
            continue
        for nb, e in incident(edges, r):
            if entities[nb]["type"] == TITLE:
                nodes.update((r, nb))
                sub.add(e)
                titles.add(nb)
    for t in titles:
        for nb, e in incident(edges, t):
            if entities[nb]["type"] in targets:
                nodes.add(nb)
                sub.add(e)
    return nodes, sub


# numerics --------------------------------------------------------------------

def quantile(values, p):
    return float(np.quantile(np.array(values, dtype=float), p, method="linear"))


def completion_threshold(z):
    if len(z) < 3:
        return None
    s = sorted(z)
    gaps = [abs(b - a) for a, b in zip(s, s[1:])]
    q1, q3 = quantile(gaps, 0.25), quantile(gaps, 0.75)
    return q3 + (q3 - q1)


def pca_1d(vectors):
    x = np.array(vectors)
    x = x - x.mean(axis=0)
    cov = x.T @ x / (len(vectors) - 1)
    w, v = np.linalg.eigh(cov)
    pc = v[:, np.argmax(w)]
    first = next(c for c in pc if abs(c) > 1e-12)
    if first < 0:
        pc = -pc
    return [float(t) for t in x @ pc]


# partitions ------------------------------------------------------------------

def set_partitions(items):
    if not items:
        yield []
        return
    head, rest = items[0], items[1:]
    for p in set_partitions(rest):
        yield [[head]] + p
        for i in range(len(p)):
            yield p[:i] + [[head] + p[i]] + p[i + 1:]


def modularity(nodes, wedges, groups):
    m = sum(w for _, _, w in wedges)
    if m == 0:
        return 0.0
    label = {n: i for i, g in enumerate(groups) for n in g}
    deg = {n: 0.0 for n in nodes}
    for s, t, w in wedges:
        deg[s] += w
        deg[t] += w
    q = 0.0
    for i, g in enumerate(groups):
        inner = sum(w for s, t, w in wedges if label[s] == i and label[t] == i)
        tot = sum(deg[n] for n in g)
        q += inner / m - (tot / (2 * m)) ** 2
    return q


def best_partition(nodes, wedges):
    best, best_q = None, -math.inf
    for p in set_partitions(sorted(nodes)):
        q = modularity(nodes, wedges, p)
        if q > best_q + 1e-12:
            best, best_q = p, q
    return canonical(best), best_q


def reference_louvain(nodes, wedges):
    # Plain two-phase Louvain: ascending-id sweeps, strict gain, aggregate, repeat.
    adj = {n: {} for n in nodes}
    for s, t, w in wedges:
        adj[s][t] = adj[s].get(t, 0.0) + w
        if s != t:
            adj[t][s] = adj[t].get(s, 0.0) + w
    owner = {n: n for n in nodes}
    level, ladj = sorted(nodes), adj
    while True:
        m2 = sum(sum(v.values()) for v in ladj.values())
        if m2 == 0:
            break
        k = {i: sum(ladj[i].values()) for i in level}
        comm = {i: i for i in level}
        tot = dict(k)
        improved, moved = False, True
        while moved:
            moved = False
            for i in level:
                ci = comm[i]
                tot[ci] -= k[i]
                links = {}
                for j, w in ladj[i].items():
                    if j != i:
                        links[comm[j]] = links.get(comm[j], 0.0) + w
                best, gain = ci, links.get(ci, 0.0) - tot[ci] * k[i] / m2
                for c in sorted(links):
                    g = links[c] - tot[c] * k[i] / m2
                    if g > gain + 1e-15:
                        best, gain = c, g
                comm[i] = best
                tot[best] += k[i]
                if best != ci:
                    moved = improved = True
        if not improved:
            break
        labels = sorted(set(comm.values()))
        nadj = {c: {} for c in labels}
        for i in level:
            for j, w in ladj[i].items():
                nadj[comm[i]][comm[j]] = nadj[comm[i]].get(comm[j], 0.0) + w
        owner = {n: comm[owner[n]] for n in nodes}
        level, ladj = labels, nadj
    groups = {}
    for n in sorted(nodes):
        groups.setdefault(owner[n], []).append(n)
    q = modularity(nodes, wedges, list(groups.values()))
    return max(q, 0.0)


def canonical(groups):
    return sorted((sorted(g) for g in groups), key=lambda g: g[0])


def merge_down(nodes, wedges, groups, theta):
    groups = canonical(groups)
    steps = []
    while len(groups) > theta:
        label = {n: i for i, g in enumerate(groups) for n in g}
        best = None
        for a, b in itertools.combinations(range(len(groups)), 2):
            w = sum(x for s, t, x in wedges if {label[s], label[t]} == {a, b})
            key = (-w, len(groups[a]) + len(groups[b]), a, b)
            if best is None or key < best[0]:
                best = (key, a, b, w)
        _, a, b, w = best
        first, second = groups[a][0], groups[b][0]
        merged = groups[a] + groups[b]
        groups = canonical([g for i, g in enumerate(groups) if i not in (a, b)] + [merged])
        steps.append({"first": first, "second": second, "inter_weight": w,
                      "modularity_after": modularity(nodes, wedges, groups)})
    return groups, steps


def central(entities, wedges, members):
    inside = set(members)
    deg = {m: 0.0 for m in members if entities[m]["type"] == TITLE}
    if not deg:
        return None
    for s, t, w in wedges:
        if s in inside and t in inside:
            if s in deg:
                deg[s] += w
            if t in deg:
                deg[t] += w
    return sorted(deg, key=lambda k: (-deg[k], k))[0]


def verbalize(entities, wedges_full, members, anchor):
    inside = set(members)
    if anchor is None:
        head = "unanchored community"
    else:
        head = f'Community anchored by "{entities[anchor]["name"]}" [{anchor}]'
    lines = [head]
    chosen = [e for e in wedges_full if e["source"] in inside and e["target"] in inside]
    chosen.sort(key=lambda e: (-e["weight"], e["source"], e["target"], e["relation_type"]))
    for e in chosen:
        tail = "original" if not e.get("description") else f"completed: {e['description']}"
        lines.append(f"{entities[e['source']]['name']} —{e['relation_type'].replace('_', ' ')}— "
                     f"{entities[e['target']]['name']} (weight {e['weight']:.4f}, {tail})")
    return "\n".join(lines)


# sections --------------------------------------------------------------------

def graph_section(entities, edges, self_loops, dups):
    p1 = sorted((nb, e[2]) for nb, e in incident(edges, "P1"))
    return {
        "num_entities": len(entities),
        "num_relations": len(edges),
        "dropped_self_loops": self_loops,
        "collapsed_duplicates": dups,
        "titles": sorted(i for i, e in entities.items() if e["type"] == TITLE),
        "neighbors_P1": [list(p) for p in p1],
        "entity_types": sorted({e["type"] for e in entities.values()}),
        "relation_types": sorted({e[2] for e in edges}),
    }


PATH_PAIRS = [
    ("Dataset-X", "Model-A"),
    ("P1", "P7"),
    ("Model-C", "Task-A"),
    ("Dataset-A", "Dataset-C"),
]


def paths_section(edges):
    allowed = sorted({e[2] for e in edges})
    out = []
    for a, b in PATH_PAIRS:
        full = all_paths(edges, a, b, set(allowed), MAX_HOPS)
        out.append({"pair": [a, b], "allowed": allowed, "total_within_bound": len(full),
                    "paths": [{"nodes": n, "types": t} for n, t in full[:MAX_PATHS]]})
    restricted = ["proposes", "uses", "evaluated_on", "cites"]
    full = all_paths(edges, "Dataset-X", "Model-A", set(restricted), MAX_HOPS)
    out.append({"pair": ["Dataset-X", "Model-A"], "allowed": restricted,
                "total_within_bound": len(full),
                "paths": [{"nodes": n, "types": t} for n, t in full[:MAX_PATHS]]})
    return out


def neighborhood_section(entities, edges):
    nodes, sub = title_neighborhood(entities, edges, {"Model-A"}, {"Dataset"})
    return {"relevant": ["Model-A"], "target_types": ["Dataset"], "nodes": sorted(nodes),
            "edges": [list(e) for e in sorted(sub)]}


def end_to_end(entities, edges):
    kws = mock_keywords(SCRIPTED_QUERY)
    cand, groups = [], []
    for k in kws:
        top, _ = tfidf_top(entities, k, TOP_K)
        cand.append(len(top))
        kept = [i for i, _ in top if set(tokens(entities[i]["name"])) & set(tokens(k))]
        groups.append(kept)
    relevant = sorted({i for g in groups for i in g})
    targets = [t for t in TARGET_TYPES if any(e["type"] == t for e in entities.values())]
    types = set(targets) | {entities[i]["type"] for i in relevant}
    rtypes = sorted({e[2] for e in edges if entities[e[0]]["type"] in types or entities[e[1]]["type"] in types})

    pairs = set()
    for gi, gj in itertools.combinations(groups, 2):
        for a in gi:
            for b in gj:
                if a != b:
                    pairs.add((min(a, b), max(a, b)))
    pairs = sorted(pairs)
    sub_nodes, sub_edges = title_neighborhood(entities, edges, set(relevant), set(targets))
    path_count = 0
    for a, b in pairs:
        for nodes, types_ in all_paths(edges, a, b, set(rtypes), MAX_HOPS)[:MAX_PATHS]:
            path_count += 1
            sub_nodes.update(nodes)
            sub_edges.update(path_edges(edges, nodes, types_))

    weighted = []
    for s, t, r in sorted(sub_edges):
        sem = semantic(verbal(entities, s, r, t), kws)
        weighted.append({"source": s, "target": t, "relation_type": r, "semantic": sem, "type_weight": 1.0,
                         "weight": sem * 1.0})
    ws = [e["weight"] for e in weighted]
    q = min(0.75, max(0.25, len(ws) / 400.0))
    theta = quantile(ws, q)
    kept = [e for e in weighted if e["weight"] >= theta]
    kept_nodes = sorted({e["source"] for e in kept} | {e["target"] for e in kept})

    adjacent = {(min(e["source"], e["target"]), max(e["source"], e["target"])) for e in kept}
    projections, completed = [], {}
    for t in targets:
        ids = [n for n in kept_nodes if entities[n]["type"] == t]
        if len(ids) < 3:
            continue
        z = pca_1d([mock_embed(entities[i]["name"]) for i in ids])
        th = completion_threshold(z)
        cands = [(ids[i], ids[j]) for i, j in itertools.combinations(range(len(ids)), 2)
                 if abs(z[i] - z[j]) <= th]
        projections.append({"entity_type": t, "entity_ids": ids, "z": z, "threshold": th,
                            "candidate_pairs": [list(c) for c in cands]})
        for a, b in cands:
            if (a, b) in adjacent:
                continue
            ta, tb = set(tokens(entities[a]["name"])), set(tokens(entities[b]["name"]))
            common = sorted(ta & tb)
            if len(common) >= 2:
                desc = f"{entities[a]['name']} and {entities[b]['name']} share {', '.join(common)}"
                completed[(a, b)] = desc
    comp_edges = []
    for (a, b), desc in sorted(completed.items()):
        sem = semantic(verbal(entities, a, "similar_to", b), kws)
        comp_edges.append({"source": a, "target": b, "relation_type": "similar_to", "semantic": sem,
                           "type_weight": 1.0, "weight": sem, "description": desc})
    refined = kept + comp_edges

    def mean_s(es):
        return sum(e["semantic"] for e in es) / len(es) if es else 0.0

    return {
        "query": SCRIPTED_QUERY,
        "keywords": kws,
        "target_types": targets,
        "candidates_per_keyword": cand,
        "filtered_per_keyword": [len(g) for g in groups],
        "filtered_entities": relevant,
        "candidate_relation_types": rtypes,
        "pair_count": len(pairs),
        "path_count": path_count,
        "subgraph_nodes": len(sub_nodes),
        "subgraph_edges": len(sub_edges),
        "weighted_edges": weighted,
        "prune_quantile": q,
        "prune_threshold": theta,
        "edges_before_prune": len(weighted),
        "edges_after_prune": len(kept),
        "nodes_after_prune": len(kept_nodes),
        "mean_semantic_before_prune": mean_s(weighted),
        "mean_semantic_after_prune": mean_s(kept),
        "projections": projections,
        "completed_edges": comp_edges,
        "edges_after_completion": len(refined),
        "mean_semantic_after_completion": mean_s(refined),
    }, refined


def semantic_section(entities):
    kws = mock_keywords(SCRIPTED_QUERY)
    cases = [("P1", "proposes", "Model-A"), ("P7", "evaluated_on", "Dataset-X"), ("Model-A", "variant_of", "Model-B")]
    out = []
    for s, r, t in cases:
        text = verbal(entities, s, r, t)
        out.append({"source": s, "relation_type": r, "target": t, "text": text, "keywords": kws,
                    "semantic": semantic(text, kws)})
    emb = {"text": "graph attention network", "vector": [float(x) for x in mock_embed("graph attention network")]}
    return {"cases": out, "embedding": emb}


def projection_section(entities):
    ids = sorted(i for i, e in entities.items() if e["type"] == "Dataset")[:4]
    z = pca_1d([mock_embed(entities[i]["name"]) for i in ids])
    return {"entity_ids": ids, "names": [entities[i]["name"] for i in ids], "z": z}


def small_case(entities, nodes, refined_all, theta):
    """Partition oracle on a node set of at most ten fixture entities."""
    inside = set(nodes)
    es = [e for e in refined_all if e["source"] in inside and e["target"] in inside]
    wedges = [(e["source"], e["target"], e["weight"]) for e in es]
    part, q = best_partition(nodes, wedges)
    merged, steps = merge_down(nodes, wedges, part, theta)
    return {
        "nodes": sorted(nodes),
        "edges": [{k: e[k] for k in ("source", "target", "relation_type", "weight", "semantic")}
                  | ({"description": e["description"]} if e.get("description") else {}) for e in es],
        "optimal_partition": part,
        "optimal_modularity": q,
        "theta_max": theta,
        "merged_partition": merged,
        "merges": steps,
        "central_titles": [central(entities, wedges, g) for g in merged],
        "verbalizations": [verbalize(entities, es, g, central(entities, wedges, g)) for g in merged],
    }


def weighted_fixture_edges(entities, edges, keywords):
    return [{"source": s, "target": t, "relation_type": r,
             "semantic": semantic(verbal(entities, s, r, t), keywords),
             "weight": semantic(verbal(entities, s, r, t), keywords)} for s, t, r in edges]


def partition_section(entities, edges, refined):
    kws = mock_keywords(SCRIPTED_QUERY)
    all_w = weighted_fixture_edges(entities, edges, kws)
    # Refined-subgraph case: breadth-first from the smallest title id, ten
    # nodes at most, neighbors visited in id order.
    adj = {}
    for e in refined:
        adj.setdefault(e["source"], set()).add(e["target"])
        adj.setdefault(e["target"], set()).add(e["source"])
    start = min(n for n in adj if entities[n]["type"] == TITLE)
    chosen, frontier = [start], [start]
    while frontier and len(chosen) < 10:
        nxt = []
        for n in frontier:
            for m in sorted(adj[n]):
                if m not in chosen and len(chosen) < 10:
                    chosen.append(m)
                    nxt.append(m)
        frontier = nxt
    cases = {"refined_subset": small_case(entities, chosen, refined, 3)}
    # Four weakly linked paper neighborhoods, merged down to three.
    four = ["P3", "Model-F", "Dataset-B", "P4", "Model-G", "Dataset-F", "P11", "Model-T", "P10", "Model-S"]
    four = [n for n in four if n in entities]
    cases["four_neighborhoods"] = small_case(entities, four, all_w, 3)
    cases["four_neighborhoods_theta1"] = small_case(entities, four, all_w, 1)
    return cases


def random_modularity_cases(seed=20260301, count=50):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        n = int(rng.integers(4, 9))
        names = [f"n{i}" for i in range(n)]
        wedges = []
        for i, j in itertools.combinations(range(n), 2):
            if rng.random() < 0.45:
                wedges.append((names[i], names[j], round(float(rng.uniform(0.1, 1.0)), 6)))
        if not wedges:
            continue
        part, q = best_partition(names, wedges)
        out.append({"nodes": names, "edges": [list(e) for e in wedges], "optimal_modularity": q,
                    "optimal_partition": part, "louvain_modularity": reference_louvain(names, wedges)})
    tri = [("a", "b", 1.0), ("b", "c", 1.0), ("a", "c", 1.0), ("d", "e", 1.0), ("e", "f", 1.0), ("d", "f", 1.0)]
    part, q = best_partition(list("abcdef"), tri)
    out.append({"nodes": list("abcdef"), "edges": [list(e) for e in tri], "optimal_modularity": q,
                "optimal_partition": part, "louvain_modularity": reference_louvain(list("abcdef"), tri)})
    return out


def quantile_cases(seed=20260302, count=1000):
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        n = int(rng.integers(3, 16))
        z = [float(x) for x in rng.normal(0.0, 1.0, n)]
        if rng.random() < 0.2:
            z[int(rng.integers(0, n))] = z[0]  # force a zero gap now and then
        out.append({"z": z, "threshold": completion_threshold(z)})
    return out


def build(graph_path):
    entities, edges, self_loops, dups = load_graph(graph_path)
    top, vocab = tfidf_top(entities, "attention", TOP_K)
    e2e, refined = end_to_end(entities, edges)
    return {
        "fixture": "toy_kg.jsonl",
        "graph": graph_section(entities, edges, self_loops, dups),
        "index": {"vocabulary_size": vocab, "keyword": "attention",
                  "top_k": [{"id": i, "score": s} for i, s in top]},
        "paths": paths_section(edges),
        "title_neighborhood": neighborhood_section(entities, edges),
        "semantic": semantic_section(entities),
        "projection": projection_section(entities),
        "end_to_end": e2e,
        "partitions": partition_section(entities, edges, refined),
        "modularity_cases": random_modularity_cases(),
        "quantile_cases": quantile_cases(),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--graph", default=str(FIXTURES / "toy_kg.jsonl"))
    ap.add_argument("--out", default=str(FIXTURES / "manifest.json"))
    args = ap.parse_args()
    manifest = build(args.graph)
    Path(args.out).write_text(json.dumps(manifest, indent=1, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
