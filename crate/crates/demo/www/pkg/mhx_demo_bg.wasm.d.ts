/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_scan_free: (a: number, b: number) => void;
export const four_point_height: (a: number, b: number) => [number, number, number];
export const limit_crosscheck: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const orbit_scan: (a: number, b: number, c: number, d: number) => [number, number, number];
export const scan_h: (a: number) => [number, number];
export const scan_h_tilde: (a: number) => [number, number];
export const scan_limit: (a: number) => number;
export const scan_moduli: (a: number) => [number, number];
export const scan_mu: (a: number) => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
