/* tslint:disable */
/* eslint-disable */

/**
 * Concurrence along a one-parameter family of pure states, computed from
 * Schmidt coefficients and from design probabilities.
 */
export function concurrence_curve(d: number, steps: number): string;

/**
 * Gram matrix of the Bloch vectors of a SIM design.
 */
export function sim_gram(d: number, kappa: number, seed: number): string;

/**
 * Witness verdicts on Werner states for `p` from 0 to 1.
 */
export function werner_scan(d: number, steps: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly concurrence_curve: (a: number, b: number) => [number, number];
    readonly sim_gram: (a: number, b: number, c: number) => [number, number];
    readonly werner_scan: (a: number, b: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
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
