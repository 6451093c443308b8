/* tslint:disable */
/* eslint-disable */

export class Classification {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly verdict: string;
    antisymplectic: boolean;
    min_eigenvalue: number;
    symplectic: boolean;
}

/**
 * Images of `[x, y, …]` under `Φ_S` as `[u, v, status, …]`; status is 0 for
 * the upper half plane, 1 for the lower, 2 for the real axis, 3 for a pole.
 */
export function act(entries: Float64Array, points: Float64Array): Float64Array;

/**
 * Sufficient-condition verdict for `S`.
 */
export function classify(entries: Float64Array): Classification;

/**
 * `[closed-form distance, length of the straight segment at k steps]`.
 */
export function distance(x1: number, y1: number, x2: number, y2: number, k: number): Float64Array;

/**
 * A seeded random element of Sp(2, ℝ) in the boundary layout.
 */
export function random_real(seed: bigint): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_classification_free: (a: number, b: number) => void;
    readonly __wbg_get_classification_antisymplectic: (a: number) => number;
    readonly __wbg_get_classification_min_eigenvalue: (a: number) => number;
    readonly __wbg_get_classification_symplectic: (a: number) => number;
    readonly __wbg_set_classification_antisymplectic: (a: number, b: number) => void;
    readonly __wbg_set_classification_min_eigenvalue: (a: number, b: number) => void;
    readonly __wbg_set_classification_symplectic: (a: number, b: number) => void;
    readonly act: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly classification_verdict: (a: number) => [number, number];
    readonly classify: (a: number, b: number) => [number, number, number];
    readonly distance: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly random_real: (a: bigint) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
