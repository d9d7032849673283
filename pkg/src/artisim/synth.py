"""Synthetic dataset generator.

Curated attribute matrices for real artifact collections are rarely
shareable, so tests and demos run on synthetic datasets with a
realistic shape: 15 artifacts in six ethnolinguistic groups, one
80-attribute and one 20-attribute perspective, and higher attribute
correlation inside groups than between them so that group clusters
emerge under the larger perspective.

Generation is deterministic per seed: each group draws a prototype
attribute set, and each artifact copies its group prototype bit by bit,
resampling a bit with probability 1 - correlation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import ConfigError
from .formats import ERA_ARCHAEOLOGICAL, ERA_ETHNOGRAPHIC, Dataset
from .model import (KIND_ATTRIBUTE, KIND_CONCEPT, Artifact, AttributeNode,
                    ConceptualStructure, Perspective)


@dataclass(frozen=True)
class SyntheticSpec:
    """Generator parameters; defaults mirror the published collection
    shape (group sizes and perspective sizes)."""

    groups: tuple[tuple[str, int], ...] = (
        ("EST", 2), ("FIN", 2), ("LAT", 3), ("LIT", 3), ("RUS", 3), ("NVG", 2))
    perspectives: tuple[tuple[str, int], ...] = (
        ("physical", 80), ("symbolic", 20))
    within_group_correlation: float = 0.9
    prototype_density: float = 0.5
    archaeological_groups: frozenset[str] = frozenset({"NVG"})

    def __post_init__(self):
        if sum(count for _, count in self.groups) < 1:
            raise ConfigError("degenerate spec: no artifacts")
        if sum(size for _, size in self.perspectives) < 1:
            raise ConfigError("degenerate spec: no attributes")
        names = [name for name, _ in self.perspectives]
        if len(set(names)) != len(names):
            raise ConfigError("perspective names must be unique")
        if not 0.0 <= self.within_group_correlation <= 1.0:
            raise ConfigError("within_group_correlation must be in [0, 1]")
        if not 0.0 <= self.prototype_density <= 1.0:
            raise ConfigError("prototype_density must be in [0, 1]")


ROOT_CONCEPT_ID = "ARTIFACT"


def gen_synthetic(seed: int, spec: SyntheticSpec = SyntheticSpec()) -> Dataset:
    """Deterministic synthetic dataset for the given seed."""
    rng = random.Random(seed)

    nodes = [AttributeNode(id=ROOT_CONCEPT_ID, label="artifact class",
                           kind=KIND_CONCEPT)]
    edges: list[tuple[str, str]] = []
    blocks: list[tuple[str, list[str]]] = []
    for name, size in spec.perspectives:
        concept_id = name.upper()
        nodes.append(AttributeNode(id=concept_id, label=f"{name} aspects",
                                   kind=KIND_CONCEPT))
        edges.append((ROOT_CONCEPT_ID, concept_id))
        attr_ids = [f"{name}-{k:03d}" for k in range(1, size + 1)]
        for attr_id in attr_ids:
            nodes.append(AttributeNode(id=attr_id, label=attr_id,
                                       kind=KIND_ATTRIBUTE,
                                       tags=frozenset({name})))
            edges.append((concept_id, attr_id))
        blocks.append((name, attr_ids))
    all_attr_ids = [attr_id for _, attr_ids in blocks for attr_id in attr_ids]

    prototypes: dict[str, list[bool]] = {}
    for group, _ in spec.groups:
        prototypes[group] = [rng.random() < spec.prototype_density
                             for _ in all_attr_ids]

    artifacts = []
    for group, count in spec.groups:
        era = (ERA_ARCHAEOLOGICAL if group in spec.archaeological_groups
               else ERA_ETHNOGRAPHIC)
        proto = prototypes[group]
        for i in range(1, count + 1):
            held = []
            for attr_id, proto_bit in zip(all_attr_ids, proto):
                if rng.random() < spec.within_group_correlation:
                    bit = proto_bit
                else:
                    bit = rng.random() < spec.prototype_density
                if bit:
                    held.append(attr_id)
            if not held:
                # artifacts must be nonempty; fall back deterministically
                proto_ids = [a for a, b in zip(all_attr_ids, proto) if b]
                held = [proto_ids[0] if proto_ids else all_attr_ids[0]]
            artifacts.append(Artifact(id=f"{group}-{i}", group=group, era=era,
                                      attributes=frozenset(held)))

    perspectives = [Perspective(id=name, name=name,
                                attributes=frozenset(attr_ids))
                    for name, attr_ids in blocks]
    return Dataset(
        structure=ConceptualStructure.build(nodes, edges),
        artifacts=tuple(artifacts),
        perspectives=tuple(perspectives),
        metadata={"name": f"synthetic-{seed}", "source": "synthetic generator",
                  "seed": str(seed)})
