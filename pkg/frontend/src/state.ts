// View-state helpers: weight normalization for display, trailing-edge
// debounce for slider streams, and the sequencer that guarantees a
// response computed for superseded weights is never rendered.

export function normalizeWeights(values: number[]): number[] {
    const total = values.reduce((acc, v) => acc + v, 0);
    if (total <= 0) {
        // all sliders at zero: treat as uniform rather than erroring
        return values.map(() => 1 / values.length);
    }
    return values.map((v) => v / total);
}

export function formatWeight(value: number): string {
    return value.toFixed(4);
}

export function debounce<A extends unknown[]>(
    fn: (...args: A) => void,
    ms: number,
): (...args: A) => void {
    let timer: ReturnType<typeof setTimeout> | undefined;
    return (...args: A) => {
        if (timer !== undefined) clearTimeout(timer);
        timer = setTimeout(() => {
            timer = undefined;
            fn(...args);
        }, ms);
    };
}

// Each recompute round trip takes a ticket; only the latest ticket may
// render. Last writer wins, slow stale responses are dropped.
export class RequestSequencer {
    private issued = 0;

    next(): number {
        return ++this.issued;
    }

    isCurrent(ticket: number): boolean {
        return ticket === this.issued;
    }
}
