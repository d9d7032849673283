from __future__ import annotations

import pytest

from artisim import (Artifact, AttributeNode, ConceptualStructure, Dataset,
                     Perspective)


@pytest.fixture
def five_attr_structure() -> ConceptualStructure:
    """u..z attribute pool with no hierarchy; the metric examples live here."""
    return ConceptualStructure.build([AttributeNode(id=i) for i in "uwxyz"])


@pytest.fixture
def pair_fixture(five_attr_structure):
    """Two artifacts and the perspectives all worked metric examples use."""
    a = Artifact(id="a", attributes={"x", "y", "z"})
    b = Artifact(id="b", attributes={"y", "z", "w"})
    p1 = Perspective(id="p1", attributes={"x", "y", "z", "w"})
    p2 = Perspective(id="p2", attributes={"y", "w"})
    p3 = Perspective(id="p3", attributes={"u"})
    return five_attr_structure, a, b, p1, p2, p3


@pytest.fixture
def instrument_structure() -> ConceptualStructure:
    """Concept root over a small reticulated attribute hierarchy:
    strings -> metal|nylon -> color, color reachable via both parents."""
    nodes = [
        AttributeNode(id="PSALTERY", label="psaltery", kind="concept"),
        AttributeNode(id="strings"),
        AttributeNode(id="metal"),
        AttributeNode(id="nylon"),
        AttributeNode(id="color"),
    ]
    edges = [("PSALTERY", "strings"), ("strings", "metal"),
             ("strings", "nylon"), ("metal", "color"), ("nylon", "color")]
    return ConceptualStructure.build(nodes, edges)


def split_dataset() -> Dataset:
    """Four artifacts whose physical-only and symbolic-only maximal
    graphs disagree: physically A~B and C~D, symbolically A~C and B~D."""
    attrs = [AttributeNode(id=i) for i in
             ("x1", "x2", "x3", "x4", "y1", "y2")]
    structure = ConceptualStructure.build(attrs)
    artifacts = (
        Artifact(id="A", group="g1", attributes={"x1", "x2", "y1"}),
        Artifact(id="B", group="g1", attributes={"x1", "x2", "y2"}),
        Artifact(id="C", group="g2", attributes={"x3", "x4", "y1"}),
        Artifact(id="D", group="g2", attributes={"x3", "x4", "y2"}),
    )
    perspectives = (
        Perspective(id="physical", name="physical",
                    attributes={"x1", "x2", "x3", "x4"}),
        Perspective(id="symbolic", name="symbolic", attributes={"y1", "y2"}),
    )
    return Dataset(structure=structure, artifacts=artifacts,
                   perspectives=perspectives)


@pytest.fixture
def split_fixture() -> Dataset:
    return split_dataset()


def pytest_terminal_summary(terminalreporter):
    """One pass/fail line per acceptance criterion."""
    lines = []
    for outcome in ("passed", "failed"):
        for report in terminalreporter.stats.get(outcome, []):
            if "test_acceptance" in report.nodeid and report.when == "call":
                name = report.nodeid.split("::")[-1]
                lines.append((name, outcome.upper().replace("ED", "")))
    if lines:
        terminalreporter.write_line("")
        terminalreporter.write_line("acceptance criteria:")
        for name, outcome in sorted(lines):
            terminalreporter.write_line(f"  {outcome:4s} {name}")
