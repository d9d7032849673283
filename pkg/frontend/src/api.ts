// Typed client for the similarity service; the UI performs no metric
// computation of its own, the engine behind this contract is the
// single source of truth.

export interface PerspectiveInfo {
    id: string;
    name: string;
    size: number;
}

export interface ArtifactInfo {
    id: string;
    group: string;
    era: string;
    size: number;
}

export interface DatasetSummary {
    name: string;
    artifacts: ArtifactInfo[];
    groups: string[];
    eras: string[];
    perspectives: PerspectiveInfo[];
    snapshot_version: string;
}

export interface WeightsPayload {
    weights: number[];
    normalized: boolean;
    mode: string;
    snapshot_version: string;
}

export interface GraphNodePayload {
    id: string;
    group: string;
    era: string;
}

export interface GraphEdgePayload {
    a: string;
    b: string;
    score: number;
}

export interface GraphPayload {
    nodes: GraphNodePayload[];
    edges: GraphEdgePayload[];
    rule: string;
    weights: number[] | null;
    snapshot_version: string;
}

export interface SweepRegionPayload {
    weights: number[][];
    edges: [string, string][];
}

export interface SweepPayload {
    grid_step: number;
    grid_points: number;
    rule: string;
    regions: SweepRegionPayload[];
    stable_edges: [string, string][];
    snapshot_version: string;
}

export interface RuleSpec {
    kind: "maximal" | "knn" | "threshold";
    n?: number;
    t?: number;
}

export function ruleQuery(rule: RuleSpec): string {
    const params = new URLSearchParams({ rule: rule.kind });
    if (rule.kind === "knn") params.set("n", String(rule.n ?? 1));
    if (rule.kind === "threshold") params.set("t", String(rule.t ?? 0));
    return params.toString();
}

export class ApiError extends Error {
    constructor(readonly status: number, message: string) {
        super(message);
    }
}

async function asJson<T>(response: Response): Promise<T> {
    if (!response.ok) {
        let detail = response.statusText;
        try {
            const body = await response.json();
            detail = body.error ?? body.detail ?? detail;
        } catch {
            // keep the status text
        }
        throw new ApiError(response.status, `${response.status}: ${detail}`);
    }
    return response.json() as Promise<T>;
}

export class ApiClient {
    constructor(private readonly base: string = "") {}

    dataset(): Promise<DatasetSummary> {
        return fetch(`${this.base}/api/dataset`).then((r) =>
            asJson<DatasetSummary>(r),
        );
    }

    weights(): Promise<WeightsPayload> {
        return fetch(`${this.base}/api/weights`).then((r) =>
            asJson<WeightsPayload>(r),
        );
    }

    putWeights(weights: number[]): Promise<WeightsPayload> {
        return fetch(`${this.base}/api/weights`, {
            method: "PUT",
            headers: { "content-type": "application/json" },
            body: JSON.stringify({ weights, mode: "expert" }),
        }).then((r) => asJson<WeightsPayload>(r));
    }

    graph(rule: RuleSpec): Promise<GraphPayload> {
        return fetch(`${this.base}/api/graph?${ruleQuery(rule)}`).then((r) =>
            asJson<GraphPayload>(r),
        );
    }

    sweep(delta: number, rule: RuleSpec): Promise<SweepPayload> {
        const body: Record<string, unknown> = { delta, rule: rule.kind };
        if (rule.kind === "knn") body.n = rule.n;
        if (rule.kind === "threshold") body.t = rule.t;
        return fetch(`${this.base}/api/sweep`, {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify(body),
        }).then((r) => asJson<SweepPayload>(r));
    }
}
