/* tslint:disable */
/* eslint-disable */

/**
 * Heights along a ray, with NaN where the orbit fails to be an MHS.
 */
export class Scan {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly h: Float64Array;
    readonly h_tilde: Float64Array;
    readonly limit: number;
    readonly moduli: Float64Array;
    readonly mu: number;
}

export function four_point_height(coords: Float64Array): number;

/**
 * Flattened rows of [`crosscheck_orbit`].
 */
export function limit_crosscheck(seed: number, pure_pairs: number, x: number, count: number): Float64Array;

export function orbit_scan(seed: number, pure_pairs: number, angle: number, decades: number): Scan;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_scan_free: (a: number, b: number) => void;
    readonly four_point_height: (a: number, b: number) => [number, number, number];
    readonly limit_crosscheck: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly orbit_scan: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly scan_h: (a: number) => [number, number];
    readonly scan_h_tilde: (a: number) => [number, number];
    readonly scan_limit: (a: number) => number;
    readonly scan_moduli: (a: number) => [number, number];
    readonly scan_mu: (a: number) => number;
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
