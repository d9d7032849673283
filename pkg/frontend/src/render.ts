// SVG graph rendering and the sweep region view. Shape and shading
// conventions mirror the server's DOT export: circle/hexagon/square
// for groups named Slavic/Finnic/Baltic, deterministic fallback shapes
// for anything else, grey fill for archaeological-era artifacts.

import { GraphPayload, SweepPayload } from "./api.js";
import { computeLayout } from "./layout.js";

const SVG_NS = "http://www.w3.org/2000/svg";

const DEFAULT_GROUP_SHAPES: Record<string, string> = {
    Slavic: "circle",
    Finnic: "hexagon",
    Baltic: "square",
};
const FALLBACK_SHAPES = [
    "ellipse", "diamond", "triangle", "trapezium",
    "parallelogram", "house", "pentagon", "octagon",
];

export function resolveShapes(groups: string[]): Map<string, string> {
    const shapes = new Map<string, string>();
    const unknown = new Set<string>();
    for (const group of groups) {
        const known = DEFAULT_GROUP_SHAPES[group];
        if (known) shapes.set(group, known);
        else unknown.add(group);
    }
    [...unknown].sort().forEach((group, i) => {
        shapes.set(group, FALLBACK_SHAPES[i % FALLBACK_SHAPES.length]);
    });
    return shapes;
}

export function edgeKey(a: string, b: string): string {
    return a < b ? `${a}|${b}` : `${b}|${a}`;
}

function svgEl(tag: string, attrs: Record<string, string>): SVGElement {
    const el = document.createElementNS(SVG_NS, tag);
    for (const [key, value] of Object.entries(attrs)) {
        el.setAttribute(key, value);
    }
    return el;
}

function polygonPoints(
    cx: number, cy: number, r: number, sides: number, rotation: number,
): string {
    const pts: string[] = [];
    for (let i = 0; i < sides; i++) {
        const angle = rotation + (2 * Math.PI * i) / sides;
        pts.push(`${(cx + r * Math.cos(angle)).toFixed(2)},` +
            `${(cy + r * Math.sin(angle)).toFixed(2)}`);
    }
    return pts.join(" ");
}

function nodeShape(shape: string, x: number, y: number, r: number): SVGElement {
    const p = (points: [number, number][]) =>
        svgEl("polygon", {
            points: points
                .map(([px, py]) => `${px.toFixed(2)},${py.toFixed(2)}`)
                .join(" "),
        });
    switch (shape) {
        case "circle":
            return svgEl("circle", { cx: `${x}`, cy: `${y}`, r: `${r}` });
        case "ellipse":
            return svgEl("ellipse", {
                cx: `${x}`, cy: `${y}`, rx: `${r * 1.25}`, ry: `${r * 0.85}`,
            });
        case "square":
            return svgEl("polygon",
                { points: polygonPoints(x, y, r * 1.2, 4, Math.PI / 4) });
        case "diamond":
            return svgEl("polygon", { points: polygonPoints(x, y, r * 1.2, 4, 0) });
        case "triangle":
            return svgEl("polygon",
                { points: polygonPoints(x, y, r * 1.2, 3, -Math.PI / 2) });
        case "pentagon":
            return svgEl("polygon",
                { points: polygonPoints(x, y, r * 1.15, 5, -Math.PI / 2) });
        case "hexagon":
            return svgEl("polygon", { points: polygonPoints(x, y, r * 1.15, 6, 0) });
        case "octagon":
            return svgEl("polygon",
                { points: polygonPoints(x, y, r * 1.15, 8, Math.PI / 8) });
        case "trapezium":
            return p([[x - r * 1.2, y + r * 0.7], [x + r * 1.2, y + r * 0.7],
                [x + r * 0.65, y - r * 0.7], [x - r * 0.65, y - r * 0.7]]);
        case "parallelogram":
            return p([[x - r * 1.2, y + r * 0.65], [x + r * 0.55, y + r * 0.65],
                [x + r * 1.2, y - r * 0.65], [x - r * 0.55, y - r * 0.65]]);
        case "house":
            return p([[x - r * 0.9, y + r * 0.9], [x + r * 0.9, y + r * 0.9],
                [x + r * 0.9, y - r * 0.2], [x, y - r], [x - r * 0.9, y - r * 0.2]]);
        default:
            return svgEl("circle", { cx: `${x}`, cy: `${y}`, r: `${r}` });
    }
}

export const GRAPH_WIDTH = 820;
export const GRAPH_HEIGHT = 540;
const NODE_RADIUS = 16;

export function renderGraph(
    svg: SVGSVGElement,
    payload: GraphPayload,
    stableEdges: Set<string>,
    layoutSeed = 42,
): void {
    svg.replaceChildren();
    svg.setAttribute("viewBox", `0 0 ${GRAPH_WIDTH} ${GRAPH_HEIGHT}`);
    const positions = computeLayout(
        payload.nodes.map((n) => n.id),
        payload.edges.map((e) => [e.a, e.b]),
        GRAPH_WIDTH, GRAPH_HEIGHT, layoutSeed,
    );
    const shapes = resolveShapes(payload.nodes.map((n) => n.group));

    for (const edge of payload.edges) {
        const pa = positions.get(edge.a)!;
        const pb = positions.get(edge.b)!;
        const stable = stableEdges.has(edgeKey(edge.a, edge.b));
        const line = svgEl("line", {
            x1: `${pa.x.toFixed(1)}`, y1: `${pa.y.toFixed(1)}`,
            x2: `${pb.x.toFixed(1)}`, y2: `${pb.y.toFixed(1)}`,
            class: stable ? "edge stable" : "edge",
        });
        line.setAttribute("data-a", edge.a);
        line.setAttribute("data-b", edge.b);
        svg.appendChild(line);
        const label = svgEl("text", {
            x: `${((pa.x + pb.x) / 2).toFixed(1)}`,
            y: `${((pa.y + pb.y) / 2 - 4).toFixed(1)}`,
            class: "edge-label",
        });
        label.textContent = edge.score.toFixed(4);
        svg.appendChild(label);
    }

    for (const node of payload.nodes) {
        const pos = positions.get(node.id)!;
        const group = svgEl("g", { class: "node" });
        group.setAttribute("data-id", node.id);
        const shape = nodeShape(shapes.get(node.group) ?? "circle",
            pos.x, pos.y, NODE_RADIUS);
        shape.setAttribute("class",
            node.era === "archaeological" ? "node-shape shaded" : "node-shape");
        group.appendChild(shape);
        const label = svgEl("text", {
            x: `${pos.x.toFixed(1)}`,
            y: `${(pos.y + NODE_RADIUS + 13).toFixed(1)}`,
            class: "node-label",
        });
        label.textContent = node.id;
        group.appendChild(label);
        svg.appendChild(group);
    }
}

export function renderEdgeList(list: HTMLElement, payload: GraphPayload): void {
    list.replaceChildren();
    for (const edge of payload.edges) {
        const item = document.createElement("li");
        item.dataset.a = edge.a;
        item.dataset.b = edge.b;
        item.textContent = `${edge.a} - ${edge.b}  (${edge.score.toFixed(4)})`;
        list.appendChild(item);
    }
}

export function renderSweep(container: HTMLElement, payload: SweepPayload): Set<string> {
    container.replaceChildren();
    const stable = new Set(payload.stable_edges.map(([a, b]) => edgeKey(a, b)));

    const heading = document.createElement("h3");
    heading.textContent =
        `${payload.regions.length} region(s) over ${payload.grid_points} ` +
        `grid points (step ${payload.grid_step}, rule ${payload.rule})`;
    container.appendChild(heading);

    const stableLine = document.createElement("p");
    stableLine.className = "stable-summary";
    stableLine.textContent = payload.stable_edges.length
        ? "stable edges: " + payload.stable_edges
            .map(([a, b]) => `${a}-${b}`).join(", ")
        : "no stable edges across regions";
    container.appendChild(stableLine);

    payload.regions.forEach((region, index) => {
        const details = document.createElement("details");
        details.className = "region";
        if (index === 0) details.open = true;
        const summary = document.createElement("summary");
        summary.textContent =
            `region ${index + 1}: ${region.weights.length} grid point(s), ` +
            `${region.edges.length} edge(s)`;
        details.appendChild(summary);

        const weightsLine = document.createElement("p");
        weightsLine.textContent = "weights: " + region.weights
            .map((point) => "(" + point.map((w) => w.toFixed(2)).join(", ") + ")")
            .join("  ");
        details.appendChild(weightsLine);

        const edges = document.createElement("ul");
        for (const [a, b] of region.edges) {
            const item = document.createElement("li");
            item.textContent = `${a} - ${b}`;
            if (stable.has(edgeKey(a, b))) item.className = "stable";
            edges.appendChild(item);
        }
        details.appendChild(edges);
        container.appendChild(details);
    });
    return stable;
}
