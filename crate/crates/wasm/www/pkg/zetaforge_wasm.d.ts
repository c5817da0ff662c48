/* tslint:disable */
/* eslint-disable */

/**
 * Double-coset representatives `(alpha, beta)` for the given numerology.
 */
export function cosets(kind: string, m: number, ell: number, j: number): string;

/**
 * Checks that `Delta` changes sign under the Weyl group.
 */
export function delta_antisymmetry(kind: string, m: number): string;

/**
 * Renders one unramified L-factor: `tensor`, `tensor-sigma`, `asai` or `zeta`.
 */
export function lfactor(which: string, kind: string, m: number, ell: number, j: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly cosets: (a: number, b: number, c: number, d: number, e: number) => [number, number];
    readonly delta_antisymmetry: (a: number, b: number, c: number) => [number, number];
    readonly lfactor: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number];
    readonly __externref_table_alloc: () => number;
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
