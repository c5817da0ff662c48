/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const cosets: (a: number, b: number, c: number, d: number, e: number) => [number, number];
export const delta_antisymmetry: (a: number, b: number, c: number) => [number, number];
export const lfactor: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number];
export const __externref_table_alloc: () => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
