"""Dataset documents and export formats.

A dataset is one JSON document (versioned header, nested sections for
structure nodes/edges, artifacts, and perspectives). Serialization is
canonical: keys sorted, every list ordered by id, so equal datasets
produce byte-identical documents and golden files stay stable.

Graphs export to DOT, GraphML, or JSON; matrices to CSV. DOT and
GraphML carry the presentation conventions used for publication
figures: node shape encodes the artifact's group, shaded fill marks
archaeological-era artifacts, edge labels carry scores to 4 decimals.
"""

from __future__ import annotations

import csv
import io
import json
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Mapping

from .errors import ConfigError, DataError, ParseError
from .graphs import SimilarityGraph, SweepReport
from .metrics import PerspectiveSet, SimilarityMatrix
from .model import (Artifact, AttributeNode, ConceptualStructure, Perspective,
                    ValidationReport, Violation, validate_artifact,
                    validate_perspective, validate_structure)

FORMAT_NAME = "conceptual-dataset"
FORMAT_VERSION = "1"

ERA_ARCHAEOLOGICAL = "archaeological"
ERA_ETHNOGRAPHIC = "ethnographic"

# Publication defaults: circle/hexagon/square for the three named
# families; any other group gets a deterministic fallback shape.
DEFAULT_GROUP_SHAPES: Mapping[str, str] = {
    "Slavic": "circle",
    "Finnic": "hexagon",
    "Baltic": "square",
}
FALLBACK_SHAPES = ("ellipse", "diamond", "triangle", "trapezium",
                   "parallelogram", "house", "pentagon", "octagon")
SHADED_FILL = "lightgrey"

GRAPH_FORMATS = ("dot", "graphml", "json")


class DatasetValidationError(DataError):
    """Raised when a parsed dataset violates model invariants; carries
    the full report so callers can show every violation."""

    def __init__(self, report: ValidationReport):
        super().__init__(str(report))
        self.report = report


@dataclass(frozen=True)
class Dataset:
    """A conceptual structure plus the artifacts and perspectives
    defined against it. Artifact and perspective lists are kept in id
    order, which also fixes matrix row order and weight indexing."""

    structure: ConceptualStructure
    artifacts: tuple[Artifact, ...]
    perspectives: tuple[Perspective, ...]
    metadata: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "artifacts",
                           tuple(sorted(self.artifacts, key=lambda a: a.id)))
        object.__setattr__(self, "perspectives",
                           tuple(sorted(self.perspectives, key=lambda p: p.id)))
        object.__setattr__(self, "metadata",
                           {str(k): str(v) for k, v in dict(self.metadata).items()})

    def perspective_set(self) -> PerspectiveSet:
        return PerspectiveSet(self.perspectives)

    def validate(self) -> ValidationReport:
        found = list(validate_structure(self.structure).violations)
        for entities, label in ((self.artifacts, "artifact"),
                                (self.perspectives, "perspective")):
            seen: set[str] = set()
            for entity in entities:
                if entity.id in seen:
                    found.append(Violation(
                        "duplicate-id", entity.id,
                        f"duplicate {label} id {entity.id}"))
                seen.add(entity.id)
        for artifact in self.artifacts:
            found.extend(validate_artifact(artifact, self.structure))
        for perspective in self.perspectives:
            found.extend(validate_perspective(perspective, self.structure))
        return ValidationReport(tuple(found))


def _expect(value, type_, where: str):
    if not isinstance(value, type_):
        raise DataError(f"{where}: expected {type_.__name__}, "
                        f"got {type(value).__name__}")
    return value


def _expect_str(mapping: dict, key: str, where: str, default=None) -> str:
    if key not in mapping:
        if default is not None:
            return default
        raise DataError(f"{where}: missing required key {key!r}")
    return _expect(mapping[key], str, f"{where}.{key}")


def _str_list(value, where: str) -> list[str]:
    return [_expect(v, str, f"{where}[{i}]")
            for i, v in enumerate(_expect(value, list, where))]


def load_dataset(data: bytes | str) -> Dataset:
    """Parse and fully validate a dataset document. Any invariant
    violation aborts with a DatasetValidationError naming the offending
    entities; malformed JSON raises ParseError with the position."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"parse error at line {exc.lineno} column {exc.colno}: "
                         f"{exc.msg}") from None
    _expect(doc, dict, "document")
    if _expect_str(doc, "format", "document") != FORMAT_NAME:
        raise DataError(f"not a {FORMAT_NAME} document "
                        f"(format={doc.get('format')!r})")
    if _expect_str(doc, "version", "document") != FORMAT_VERSION:
        raise DataError(f"unsupported dataset version {doc['version']!r}, "
                        f"expected {FORMAT_VERSION!r}")

    structure_doc = _expect(doc.get("structure", {}), dict, "structure")
    nodes = []
    for i, entry in enumerate(_expect(structure_doc.get("nodes", []),
                                      list, "structure.nodes")):
        where = f"structure.nodes[{i}]"
        _expect(entry, dict, where)
        nodes.append(AttributeNode(
            id=_expect_str(entry, "id", where),
            label=_expect_str(entry, "label", where, default=""),
            kind=_expect_str(entry, "kind", where, default="attribute"),
            tags=frozenset(_str_list(entry.get("tags", []), f"{where}.tags"))))
    edges = []
    for i, entry in enumerate(_expect(structure_doc.get("edges", []),
                                      list, "structure.edges")):
        pair = _str_list(entry, f"structure.edges[{i}]")
        if len(pair) != 2:
            raise DataError(f"structure.edges[{i}]: expected [parent, child]")
        edges.append((pair[0], pair[1]))
    structure = ConceptualStructure.build(nodes, edges)

    artifacts = []
    for i, entry in enumerate(_expect(doc.get("artifacts", []),
                                      list, "artifacts")):
        where = f"artifacts[{i}]"
        _expect(entry, dict, where)
        artifacts.append(Artifact(
            id=_expect_str(entry, "id", where),
            group=_expect_str(entry, "group", where, default=""),
            era=_expect_str(entry, "era", where, default=""),
            attributes=frozenset(_str_list(entry.get("attributes", []),
                                           f"{where}.attributes"))))
    perspectives = []
    for i, entry in enumerate(_expect(doc.get("perspectives", []),
                                      list, "perspectives")):
        where = f"perspectives[{i}]"
        _expect(entry, dict, where)
        perspectives.append(Perspective(
            id=_expect_str(entry, "id", where),
            name=_expect_str(entry, "name", where, default=""),
            attributes=frozenset(_str_list(entry.get("attributes", []),
                                           f"{where}.attributes"))))
    metadata = {k: _expect(v, str, f"metadata.{k}")
                for k, v in _expect(doc.get("metadata", {}),
                                    dict, "metadata").items()}

    dataset = Dataset(structure=structure, artifacts=tuple(artifacts),
                      perspectives=tuple(perspectives), metadata=metadata)
    report = dataset.validate()
    if not report.ok:
        raise DatasetValidationError(report)
    return dataset


def save_dataset(dataset: Dataset) -> bytes:
    """Canonical serialization: equal datasets give identical bytes."""
    nodes = []
    for node in (dataset.structure.nodes[k]
                 for k in sorted(dataset.structure.nodes)):
        entry = {"id": node.id, "label": node.label, "kind": node.kind}
        if node.tags:
            entry["tags"] = sorted(node.tags)
        nodes.append(entry)
    doc = {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "structure": {
            "nodes": nodes,
            "edges": [list(e) for e in sorted(dataset.structure.edges)],
        },
        "artifacts": [
            {"id": a.id, "group": a.group, "era": a.era,
             "attributes": sorted(a.attributes)}
            for a in dataset.artifacts
        ],
        "perspectives": [
            {"id": p.id, "name": p.name, "attributes": sorted(p.attributes)}
            for p in dataset.perspectives
        ],
    }
    if dataset.metadata:
        doc["metadata"] = dict(sorted(dataset.metadata.items()))
    return (json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False)
            + "\n").encode("utf-8")


def export_matrix(matrix: SimilarityMatrix) -> bytes:
    """CSV with an id header row and a symmetric float body; values use
    shortest round-trip float formatting."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["id", *matrix.ids])
    for i, row_id in enumerate(matrix.ids):
        writer.writerow([row_id, *(repr(float(v)) for v in matrix.values[i])])
    return out.getvalue().encode("utf-8")


def import_matrix(data: bytes | str) -> SimilarityMatrix:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or len(rows[0]) < 2 or rows[0][0] != "id":
        raise ParseError("matrix CSV: expected header row starting with 'id'")
    ids = tuple(rows[0][1:])
    if len(rows) - 1 != len(ids):
        raise ParseError(f"matrix CSV: {len(ids)} ids but {len(rows) - 1} rows")
    values = []
    for row in rows[1:]:
        if len(row) != len(ids) + 1:
            raise ParseError(f"matrix CSV: row {row[0]!r} has {len(row) - 1} "
                             f"values, expected {len(ids)}")
        try:
            values.append(tuple(float(cell) for cell in row[1:]))
        except ValueError as exc:
            raise ParseError(f"matrix CSV: row {row[0]!r}: {exc}") from None
    if tuple(r[0] for r in rows[1:]) != ids:
        raise ParseError("matrix CSV: row ids do not match header ids")
    return SimilarityMatrix(ids=ids, values=tuple(values), formula="imported")


def resolve_shapes(groups, table: Mapping[str, str] | None = None) -> dict[str, str]:
    """Shape per group: the configured table first, then a deterministic
    fallback assignment over the sorted unknown group names."""
    merged = dict(DEFAULT_GROUP_SHAPES)
    if table:
        merged.update(table)
    shapes = {g: merged[g] for g in groups if g in merged}
    for i, g in enumerate(sorted(g for g in set(groups) if g not in merged)):
        shapes[g] = FALLBACK_SHAPES[i % len(FALLBACK_SHAPES)]
    return shapes


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _graph_to_dot(graph: SimilarityGraph,
                  shape_table: Mapping[str, str] | None) -> str:
    shapes = resolve_shapes([n.group for n in graph.nodes], shape_table)
    lines = ["graph similarity {"]
    for node in sorted(graph.nodes, key=lambda n: n.id):
        attrs = [f"shape={shapes[node.group]}"]
        if node.era == ERA_ARCHAEOLOGICAL:
            attrs.append("style=filled")
            attrs.append(f"fillcolor={SHADED_FILL}")
        lines.append(f"  {_dot_quote(node.id)} [{', '.join(attrs)}];")
    for edge in sorted(graph.edges, key=lambda e: e.pair):
        lines.append(f"  {_dot_quote(edge.a)} -- {_dot_quote(edge.b)} "
                     f'[label="{float(edge.score):.4f}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


_GRAPHML_NS = "http://graphml.graphdrawing.org/xmlns"


def _graph_to_graphml(graph: SimilarityGraph,
                      shape_table: Mapping[str, str] | None) -> bytes:
    shapes = resolve_shapes([n.group for n in graph.nodes], shape_table)
    root = ET.Element("graphml", xmlns=_GRAPHML_NS)
    keys = [("group", "node", "string"), ("era", "node", "string"),
            ("shape", "node", "string"), ("shaded", "node", "boolean"),
            ("label", "edge", "string"), ("score", "edge", "double")]
    for name, domain, typ in keys:
        ET.SubElement(root, "key", id=name, attrib={
            "for": domain, "attr.name": name, "attr.type": typ})
    g = ET.SubElement(root, "graph", id="similarity", edgedefault="undirected")
    for node in sorted(graph.nodes, key=lambda n: n.id):
        el = ET.SubElement(g, "node", id=node.id)
        values = {"group": node.group, "era": node.era,
                  "shape": shapes[node.group],
                  "shaded": "true" if node.era == ERA_ARCHAEOLOGICAL else "false"}
        for key, value in values.items():
            data = ET.SubElement(el, "data", key=key)
            data.text = value
    for edge in sorted(graph.edges, key=lambda e: e.pair):
        el = ET.SubElement(g, "edge", source=edge.a, target=edge.b)
        for key, value in (("label", f"{float(edge.score):.4f}"),
                           ("score", repr(float(edge.score)))):
            data = ET.SubElement(el, "data", key=key)
            data.text = value
    ET.indent(root)
    return ET.tostring(root, encoding="UTF-8", xml_declaration=True) + b"\n"


def graph_payload(graph: SimilarityGraph) -> dict:
    """The JSON graph object: nodes with group/era, scored edges, the
    derivation rule, and the weight point that produced the matrix."""
    return {
        "nodes": [{"id": n.id, "group": n.group, "era": n.era}
                  for n in sorted(graph.nodes, key=lambda n: n.id)],
        "edges": [{"a": e.a, "b": e.b, "score": float(e.score)}
                  for e in sorted(graph.edges, key=lambda e: e.pair)],
        "rule": str(graph.rule),
        "weights": (graph.weights.as_floats() if graph.weights is not None
                    else None),
    }


def export_graph(graph: SimilarityGraph, format: str = "dot",
                 shape_table: Mapping[str, str] | None = None) -> bytes:
    if format == "dot":
        return _graph_to_dot(graph, shape_table).encode("utf-8")
    if format == "graphml":
        return _graph_to_graphml(graph, shape_table)
    if format == "json":
        return (json.dumps(graph_payload(graph), indent=2, sort_keys=True)
                + "\n").encode("utf-8")
    raise ConfigError(f"unknown graph format {format!r}, "
                      f"expected one of {GRAPH_FORMATS}")


def sweep_payload(report: SweepReport) -> dict:
    return {
        "formula": report.formula,
        "grid_step": float(report.grid_step),
        "grid_step_exact": str(report.grid_step),
        "grid_points": report.grid_point_count,
        "rule": str(report.rule),
        "regions": [
            {"weights": [w.as_floats() for w in region.grid_points],
             "edges": sorted(list(pair) for pair in region.edges)}
            for region in report.regions
        ],
        "stable_edges": sorted(list(pair) for pair in report.stable_edges),
    }


def export_sweep_report(report: SweepReport) -> bytes:
    return (json.dumps(sweep_payload(report), indent=2, sort_keys=True)
            + "\n").encode("utf-8")
