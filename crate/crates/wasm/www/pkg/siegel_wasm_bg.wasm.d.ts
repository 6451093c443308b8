/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_classification_free: (a: number, b: number) => void;
export const __wbg_get_classification_antisymplectic: (a: number) => number;
export const __wbg_get_classification_min_eigenvalue: (a: number) => number;
export const __wbg_get_classification_symplectic: (a: number) => number;
export const __wbg_set_classification_antisymplectic: (a: number, b: number) => void;
export const __wbg_set_classification_min_eigenvalue: (a: number, b: number) => void;
export const __wbg_set_classification_symplectic: (a: number, b: number) => void;
export const act: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const classification_verdict: (a: number) => [number, number];
export const classify: (a: number, b: number) => [number, number, number];
export const distance: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
export const random_real: (a: bigint) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
