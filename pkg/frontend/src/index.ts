/**
 * Handle-based binding to the gale transform tool.
 *
 * A plan handle captures one validated parameter set (image dims, domain
 * geometry, accuracy knobs).  Apply calls marshal complex arrays through the
 * GCPX container and run the CLI, so every result is bit-identical to what
 * the command line produces on the same input.  Handles stay valid until
 * release(); use-after-release and double release raise, and release while
 * an apply is in flight raises rather than racing.
 */

import { spawnSync } from "node:child_process";
import { mkdtempSync, readFileSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { ComplexArray, decodeGcpx, encodeGcpx } from "./gcpx.js";

export { ComplexArray, complexZeros, decodeGcpx, encodeGcpx } from "./gcpx.js";

export interface PlanParams {
  m: number;
  n: number;
  M: number;
  N: number;
  theta0?: number;
  sigma?: number | "auto";
  NL?: number;
  S?: number;
  eps?: number;
  threads?: number;
}

export interface PlanHandle {
  readonly id: number;
}

interface PlanState {
  params: PlanParams;
  inFlight: number;
  released: boolean;
}

const plans = new Map<number, PlanState>();
let nextId = 1;

/** Executable to invoke; override with the GALE_CLI environment variable. */
export function cliPath(): string {
  return process.env.GALE_CLI ?? "gale";
}

function runCli(args: string[]): string {
  const proc = spawnSync(cliPath(), args, { encoding: "utf8" });
  if (proc.error) {
    throw new Error(`failed to launch ${cliPath()}: ${proc.error.message}`);
  }
  if (proc.status !== 0) {
    const msg = (proc.stderr || proc.stdout || "").trim();
    throw new Error(msg || `${cliPath()} exited with status ${proc.status}`);
  }
  return proc.stdout;
}

/** Version string of the underlying tool. */
export function version(): string {
  return runCli(["--version"]).trim();
}

function domainFlags(p: PlanParams): string[] {
  const flags = ["--M", String(p.M), "--N", String(p.N)];
  if (p.theta0 !== undefined) flags.push("--theta0", String(p.theta0));
  flags.push("--sigma", p.sigma === undefined ? "auto" : String(p.sigma));
  if (p.NL !== undefined) flags.push("--NL", String(p.NL));
  if (p.S !== undefined) flags.push("--S", String(p.S));
  if (p.eps !== undefined) flags.push("--eps", String(p.eps));
  if (p.threads !== undefined) flags.push("--threads", String(p.threads));
  return flags;
}

function withScratch<T>(fn: (dir: string) => T): T {
  const dir = mkdtempSync(join(tmpdir(), "gale-binding-"));
  try {
    return fn(dir);
  } finally {
    rmSync(dir, { recursive: true, force: true });
  }
}

/**
 * Validate a parameter set against the native tool and return a handle.
 *
 * Validation runs the real forward path on an all-zeros image, so every
 * constraint the tool enforces (sigma vs pi/(n-1), N_L divisibility, ...)
 * surfaces here as an exception carrying the tool's message.
 */
export function planCreate(params: PlanParams): PlanHandle {
  withScratch((dir) => {
    const zin = join(dir, "zeros.gcpx");
    const zout = join(dir, "out.gcpx");
    writeFileSync(zin, encodeGcpx({
      dims: [params.m, params.n],
      data: new Float64Array(2 * params.m * params.n),
    }));
    runCli(["forward", "-i", zin, "-o", zout, ...domainFlags(params)]);
  });
  const id = nextId++;
  plans.set(id, { params: { ...params }, inFlight: 0, released: false });
  return { id };
}

function acquire(handle: PlanHandle): PlanState {
  const state = plans.get(handle.id);
  if (!state || state.released) {
    throw new Error(`plan handle ${handle.id} is released or unknown`);
  }
  return state;
}

export function release(handle: PlanHandle): void {
  const state = plans.get(handle.id);
  if (!state || state.released) {
    throw new Error(`plan handle ${handle.id} already released or unknown`);
  }
  if (state.inFlight > 0) {
    throw new Error(`plan handle ${handle.id} has ${state.inFlight} applies in flight`);
  }
  state.released = true;
  plans.delete(handle.id);
}

function applyThrough(
  handle: PlanHandle,
  sub: string,
  input: ComplexArray,
  extra: string[] = [],
  needDims = false,
): ComplexArray {
  const state = acquire(handle);
  state.inFlight++;
  try {
    return withScratch((dir) => {
      const inPath = join(dir, "in.gcpx");
      const outPath = join(dir, "out.gcpx");
      writeFileSync(inPath, encodeGcpx(input));
      const dims = needDims
        ? ["--m", String(state.params.m), "--n", String(state.params.n)]
        : [];
      runCli([sub, "-i", inPath, "-o", outPath,
              ...domainFlags(state.params), ...dims, ...extra]);
      return decodeGcpx(readFileSync(outPath));
    });
  } finally {
    state.inFlight--;
  }
}

/** Fast transform: (m, n) image to (M, N) ray samples. */
export function forward(handle: PlanHandle, image: ComplexArray): ComplexArray {
  return applyThrough(handle, "forward", image);
}

/** Exact adjoint: (M, N) ray samples to (m, n) image. */
export function adjoint(handle: PlanHandle, samples: ComplexArray): ComplexArray {
  return applyThrough(handle, "adjoint", samples, [], true);
}

/** Density-compensated adjoint reconstruction of (C, M, N) or (M, N) data. */
export function fbp(handle: PlanHandle, coilData: ComplexArray): ComplexArray {
  return applyThrough(handle, "fbp", coilData, [], true);
}

/** Least-squares reconstruction by conjugate gradients. */
export function cg(
  handle: PlanHandle,
  samples: ComplexArray,
  iters = 20,
  x0?: ComplexArray,
): ComplexArray {
  const state = acquire(handle);
  state.inFlight++;
  try {
    return withScratch((dir) => {
      const inPath = join(dir, "y.gcpx");
      const outPath = join(dir, "x.gcpx");
      writeFileSync(inPath, encodeGcpx(samples));
      const extra = ["--iters", String(iters)];
      if (x0) {
        const x0Path = join(dir, "x0.gcpx");
        writeFileSync(x0Path, encodeGcpx(x0));
        extra.push("--x0", x0Path);
      }
      runCli(["cg", "-i", inPath, "-o", outPath, ...domainFlags(state.params),
              "--m", String(state.params.m), "--n", String(state.params.n),
              ...extra]);
      return decodeGcpx(readFileSync(outPath));
    });
  } finally {
    state.inFlight--;
  }
}
