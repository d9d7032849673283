// Deterministic force layout: seeded initial ring placement plus a
// fixed number of spring/repulsion iterations. Same payload and seed
// always give the same picture; layout is presentation only and never
// feeds analysis.

export interface Point {
    x: number;
    y: number;
}

function mulberry32(seed: number): () => number {
    let a = seed >>> 0;
    return () => {
        a = (a + 0x6d2b79f5) >>> 0;
        let t = a;
        t = Math.imul(t ^ (t >>> 15), t | 1);
        t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
        return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
    };
}

const ITERATIONS = 150;
const SPRING_LENGTH = 0.28;
const SPRING_STRENGTH = 0.04;
const REPULSION = 0.012;

export function computeLayout(
    nodeIds: string[],
    edges: [string, string][],
    width: number,
    height: number,
    seed = 42,
): Map<string, Point> {
    const ids = [...nodeIds].sort();
    const rand = mulberry32(seed);
    const pos = new Map<string, Point>();
    ids.forEach((id, i) => {
        const angle = (2 * Math.PI * i) / ids.length;
        pos.set(id, {
            x: 0.5 + 0.38 * Math.cos(angle) + 0.02 * (rand() - 0.5),
            y: 0.5 + 0.38 * Math.sin(angle) + 0.02 * (rand() - 0.5),
        });
    });

    const linked = edges
        .filter(([a, b]) => pos.has(a) && pos.has(b))
        .map(([a, b]) => [a, b] as const);

    for (let step = 0; step < ITERATIONS; step++) {
        const force = new Map<string, Point>(
            ids.map((id) => [id, { x: 0, y: 0 }]),
        );
        for (let i = 0; i < ids.length; i++) {
            for (let j = i + 1; j < ids.length; j++) {
                const p = pos.get(ids[i])!;
                const q = pos.get(ids[j])!;
                const dx = p.x - q.x;
                const dy = p.y - q.y;
                const d2 = Math.max(dx * dx + dy * dy, 1e-6);
                const push = REPULSION / d2;
                const fi = force.get(ids[i])!;
                const fj = force.get(ids[j])!;
                fi.x += dx * push;
                fi.y += dy * push;
                fj.x -= dx * push;
                fj.y -= dy * push;
            }
        }
        for (const [a, b] of linked) {
            const p = pos.get(a)!;
            const q = pos.get(b)!;
            const dx = q.x - p.x;
            const dy = q.y - p.y;
            const dist = Math.max(Math.hypot(dx, dy), 1e-6);
            const pull = SPRING_STRENGTH * (dist - SPRING_LENGTH);
            const fa = force.get(a)!;
            const fb = force.get(b)!;
            fa.x += (dx / dist) * pull;
            fa.y += (dy / dist) * pull;
            fb.x -= (dx / dist) * pull;
            fb.y -= (dy / dist) * pull;
        }
        const cooling = 1 - step / ITERATIONS;
        for (const id of ids) {
            const p = pos.get(id)!;
            const f = force.get(id)!;
            p.x = Math.min(0.97, Math.max(0.03, p.x + f.x * cooling));
            p.y = Math.min(0.97, Math.max(0.03, p.y + f.y * cooling));
        }
    }

    const scaled = new Map<string, Point>();
    for (const [id, p] of pos) {
        scaled.set(id, { x: p.x * width, y: p.y * height });
    }
    return scaled;
}
