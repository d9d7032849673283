#!/usr/bin/env python3
"""Walk a dataset through the canonical weight-space experiment.

Derives the maximal similarity graph under each single perspective,
under equal weights, and under a 25/75 split, exports DOT files for
each, then sweeps the weight grid and reports the stable edges.

    python scripts/weight_space_demo.py data/synthetic-1.json --out-dir out/
"""

from __future__ import annotations

import argparse
from fractions import Fraction
from pathlib import Path

from artisim import (GraphRule, WeightVector, compare_graphs, export_graph,
                     export_sweep_report, load_dataset,
                     maximal_similarity_graph, similarity_matrix, sweep,
                     weights_uniform)

# map the synthetic group codes onto the publication family shapes
FAMILY_SHAPES = {
    "EST": "hexagon", "FIN": "hexagon",   # Finnic
    "LAT": "square", "LIT": "square",     # Baltic
    "RUS": "circle", "NVG": "circle",     # Slavic
}


def single_perspective_vector(n: int, index: int) -> WeightVector:
    weights = [Fraction(0)] * n
    weights[index] = Fraction(1)
    return WeightVector(tuple(weights), normalized=True)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("dataset", type=Path)
    parser.add_argument("--out-dir", type=Path, default=Path("out"))
    parser.add_argument("--delta", default="0.05")
    args = parser.parse_args()

    dataset = load_dataset(args.dataset.read_bytes())
    pset = dataset.perspective_set()
    names = [p.id for p in pset]
    args.out_dir.mkdir(parents=True, exist_ok=True)

    scenarios = [(f"only-{name}", single_perspective_vector(len(pset), i))
                 for i, name in enumerate(names)]
    scenarios.append(("equal", weights_uniform(pset)))
    if len(pset) == 2:
        scenarios.append(("quarter",
                          WeightVector((Fraction(1, 4), Fraction(3, 4)),
                                       normalized=True)))

    graphs = {}
    for label, weights in scenarios:
        matrix = similarity_matrix(pset, weights, dataset.artifacts)
        graph = maximal_similarity_graph(matrix)
        out = args.out_dir / f"maximal-{label}.dot"
        out.write_bytes(export_graph(graph, "dot", shape_table=FAMILY_SHAPES))
        graphs[label] = graph
        print(f"{label:>16}: {len(graph.edges)} edges -> {out}")

    base = next(iter(graphs))
    for label in list(graphs)[1:]:
        diff = compare_graphs(graphs[base], graphs[label])
        print(f"{base} vs {label}: {len(diff.retained)} shared edges, "
              f"{len(diff.added) + len(diff.removed)} differing")

    report = sweep(pset, dataset.artifacts, Fraction(args.delta),
                   GraphRule("maximal"))
    out = args.out_dir / "sweep.json"
    out.write_bytes(export_sweep_report(report))
    print(f"sweep: {report.grid_point_count} grid points, "
          f"{len(report.regions)} regions, "
          f"{len(report.stable_edges)} stable edges -> {out}")


if __name__ == "__main__":
    main()
