"""Core model: conceptual structure, artifacts, perspectives.

The conceptual structure is a reticulated hierarchy (a DAG in which a
node may have several parents) of attribute and concept nodes shared by
every artifact in a dataset. An artifact is a nonempty set of attribute
nodes; a perspective is a nonempty subset of structure nodes used to
filter comparisons. Everything here is immutable after construction;
changing a structure means building a new one.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import AbstractSet, Iterable, Mapping

from .errors import ConfigError, DataError

KIND_CONCEPT = "concept"
KIND_ATTRIBUTE = "attribute"
_KINDS = (KIND_CONCEPT, KIND_ATTRIBUTE)

CLOSURE_NONE = "none"
CLOSURE_ANCESTORS = "ancestors"
_CLOSURES = (CLOSURE_NONE, CLOSURE_ANCESTORS)


@dataclass(frozen=True)
class AttributeNode:
    """One node of the conceptual structure.

    Concept nodes (basic-level or superordinate categories) may only
    ever appear as ancestors; they never enter an artifact's attribute
    set and are never counted by the similarity metrics.
    """

    id: str
    label: str = ""
    kind: str = KIND_ATTRIBUTE
    tags: frozenset[str] = frozenset()

    def __post_init__(self):
        if not self.id:
            raise DataError("node id must be a nonempty string")
        if self.kind not in _KINDS:
            raise DataError(f"node {self.id!r}: unknown kind {self.kind!r}")
        object.__setattr__(self, "tags", frozenset(self.tags))


@dataclass(frozen=True)
class ConceptualStructure:
    """The total attribute network. Edges run parent -> child, coarser
    level of descriptive resolution to finer."""

    nodes: Mapping[str, AttributeNode]
    edges: frozenset[tuple[str, str]]

    @classmethod
    def build(cls, nodes: Iterable[AttributeNode],
              edges: Iterable[tuple[str, str]] = ()) -> "ConceptualStructure":
        by_id: dict[str, AttributeNode] = {}
        for node in nodes:
            if node.id in by_id:
                raise DataError(f"duplicate node id {node.id!r}")
            by_id[node.id] = node
        return cls(nodes={k: by_id[k] for k in sorted(by_id)},
                   edges=frozenset((str(p), str(c)) for p, c in edges))

    @cached_property
    def attribute_ids(self) -> frozenset[str]:
        return frozenset(n.id for n in self.nodes.values()
                         if n.kind == KIND_ATTRIBUTE)

    @cached_property
    def parents(self) -> Mapping[str, frozenset[str]]:
        acc: dict[str, set[str]] = {nid: set() for nid in self.nodes}
        for parent, child in self.edges:
            if child in acc and parent in self.nodes:
                acc[child].add(parent)
        return {nid: frozenset(ps) for nid, ps in acc.items()}

    def roots(self) -> frozenset[str]:
        return frozenset(nid for nid, ps in self.parents.items() if not ps)


@dataclass(frozen=True)
class Artifact:
    """A concrete artifact: its identity, group/era labels, and the
    explicit set of attribute nodes that describe it."""

    id: str
    group: str = ""
    era: str = ""
    attributes: frozenset[str] = frozenset()

    def __post_init__(self):
        if not self.id:
            raise DataError("artifact id must be a nonempty string")
        object.__setattr__(self, "attributes", frozenset(self.attributes))
        if not self.attributes:
            raise DataError(f"artifact {self.id!r} has an empty attribute set")


@dataclass(frozen=True)
class Perspective:
    """A named subset of structure attributes through which artifacts
    are compared. Its members need not be linked to each other."""

    id: str
    name: str = ""
    attributes: frozenset[str] = frozenset()

    def __post_init__(self):
        if not self.id:
            raise DataError("perspective id must be a nonempty string")
        object.__setattr__(self, "attributes", frozenset(self.attributes))
        if not self.attributes:
            raise DataError(f"perspective {self.id!r} has an empty attribute set")


@dataclass(frozen=True)
class Violation:
    code: str
    subject: str
    message: str

    def __str__(self) -> str:
        return self.message


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "\n".join(v.message for v in self.violations)


def _cycle_groups(structure: ConceptualStructure) -> list[tuple[str, ...]]:
    """Strongly connected components with more than one node, plus
    self-loops: exactly the node groups lying on directed cycles."""
    children: dict[str, list[str]] = {nid: [] for nid in structure.nodes}
    for parent, child in sorted(structure.edges):
        if parent in children and child in children:
            children[parent].append(child)

    # Tarjan, iterative to keep deep chains off the Python stack.
    index: dict[str, int] = {}
    low: dict[str, int] = {}
    on_stack: set[str] = set()
    stack: list[str] = []
    counter = 0
    sccs: list[tuple[str, ...]] = []

    for start in sorted(structure.nodes):
        if start in index:
            continue
        work = [(start, iter(children[start]))]
        index[start] = low[start] = counter
        counter += 1
        stack.append(start)
        on_stack.add(start)
        while work:
            node, it = work[-1]
            advanced = False
            for child in it:
                if child not in index:
                    index[child] = low[child] = counter
                    counter += 1
                    stack.append(child)
                    on_stack.add(child)
                    work.append((child, iter(children[child])))
                    advanced = True
                    break
                if child in on_stack:
                    low[node] = min(low[node], index[child])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                comp = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    comp.append(member)
                    if member == node:
                        break
                if len(comp) > 1 or (node, node) in structure.edges:
                    sccs.append(tuple(sorted(comp)))
    return sorted(sccs)


def validate_structure(structure: ConceptualStructure) -> ValidationReport:
    """Check every structure invariant; violations are data, not faults."""
    found: list[Violation] = []
    for parent, child in sorted(structure.edges):
        for endpoint in (parent, child):
            if endpoint not in structure.nodes:
                found.append(Violation(
                    "dangling-edge", endpoint,
                    f"dangling edge endpoint {endpoint} (edge {parent}->{child})"))
    for comp in _cycle_groups(structure):
        found.append(Violation("cycle", ",".join(comp),
                               "cycle: " + ",".join(comp)))
    if not structure.nodes:
        found.append(Violation("no-root", "", "empty structure: no root node"))
    elif not structure.roots():
        found.append(Violation("no-root", "", "no root: every node has a parent"))
    return ValidationReport(tuple(found))


def validate_artifact(artifact: Artifact,
                      structure: ConceptualStructure) -> list[Violation]:
    found = []
    for attr in sorted(artifact.attributes):
        node = structure.nodes.get(attr)
        if node is None:
            found.append(Violation(
                "unknown-attribute", attr,
                f"artifact {artifact.id}: unknown attribute {attr}"))
        elif node.kind != KIND_ATTRIBUTE:
            found.append(Violation(
                "concept-in-artifact", attr,
                f"artifact {artifact.id}: {attr} is a concept node, "
                f"concepts cannot be artifact attributes"))
    return found


def validate_perspective(perspective: Perspective,
                         structure: ConceptualStructure) -> list[Violation]:
    found = []
    for attr in sorted(perspective.attributes):
        if attr not in structure.nodes:
            found.append(Violation(
                "unknown-attribute", attr,
                f"perspective {perspective.id}: unknown attribute {attr}"))
    return found


def effective_attributes(artifact: Artifact, structure: ConceptualStructure,
                         closure: str = CLOSURE_NONE) -> frozenset[str]:
    """The attribute set a metric sees for this artifact.

    closure="ancestors" unions in every attribute-kind ancestor
    reachable through reversed edges; concept nodes are traversed but
    never included. Each node is visited at most once, so reticulated
    multi-parent regions cost linear time.
    """
    if closure not in _CLOSURES:
        raise ConfigError(f"unknown closure mode {closure!r}, "
                          f"expected one of {_CLOSURES}")
    for attr in artifact.attributes:
        if attr not in structure.nodes:
            raise DataError(f"artifact {artifact.id}: unknown attribute {attr}")
    if closure == CLOSURE_NONE:
        return artifact.attributes

    parents = structure.parents
    seen: set[str] = set(artifact.attributes)
    stack: list[str] = list(artifact.attributes)
    while stack:
        for parent in parents[stack.pop()]:
            if parent not in seen:
                seen.add(parent)
                stack.append(parent)
    return frozenset(a for a in seen
                     if structure.nodes[a].kind == KIND_ATTRIBUTE)


def with_closure(artifact: Artifact, structure: ConceptualStructure,
                 closure: str = CLOSURE_NONE) -> Artifact:
    """A copy of the artifact whose explicit set is the effective set."""
    if closure == CLOSURE_NONE:
        return artifact
    return Artifact(id=artifact.id, group=artifact.group, era=artifact.era,
                    attributes=effective_attributes(artifact, structure, closure))


def restrict(attrs: AbstractSet[str], perspective: Perspective) -> frozenset[str]:
    """Restriction of an attribute set to a perspective: intersection."""
    return frozenset(attrs) & perspective.attributes


def full_perspective(structure: ConceptualStructure,
                     id: str = "structure",
                     name: str = "entire structure") -> Perspective:
    """The whole conceptual structure viewed as one perspective."""
    return Perspective(id=id, name=name, attributes=structure.attribute_ids)
