/**
 * GCPX encode/decode: the binary container the native CLI exchanges.
 *
 * Layout (little-endian): magic "GCPX", uint32 version (1), uint32 ndims,
 * ndims * uint32 dims, then row-major complex entries as float64 re/im
 * pairs (16 bytes each).
 */

export interface ComplexArray {
  /** row-major dimensions, e.g. [m, n] */
  dims: number[];
  /** interleaved re,im float64 pairs, length 2 * prod(dims) */
  data: Float64Array;
}

const MAGIC = 0x58504347; // "GCPX" read little-endian
const VERSION = 1;
const IS_LE = new Uint8Array(new Uint16Array([1]).buffer)[0] === 1;

export function complexZeros(dims: number[]): ComplexArray {
  const total = dims.reduce((a, b) => a * b, 1);
  return { dims: [...dims], data: new Float64Array(2 * total) };
}

export function encodeGcpx(arr: ComplexArray): Buffer {
  const total = arr.dims.reduce((a, b) => a * b, 1);
  if (arr.data.length !== 2 * total) {
    throw new Error(
      `data length ${arr.data.length} does not match dims ${arr.dims} (expected ${2 * total})`,
    );
  }
  const header = Buffer.alloc(12 + 4 * arr.dims.length);
  header.writeUInt32LE(MAGIC, 0);
  header.writeUInt32LE(VERSION, 4);
  header.writeUInt32LE(arr.dims.length, 8);
  arr.dims.forEach((d, i) => header.writeUInt32LE(d, 12 + 4 * i));
  let payload: Buffer;
  if (IS_LE) {
    payload = Buffer.from(arr.data.buffer, arr.data.byteOffset, arr.data.byteLength);
  } else {
    payload = Buffer.alloc(8 * arr.data.length);
    arr.data.forEach((v, i) => payload.writeDoubleLE(v, 8 * i));
  }
  return Buffer.concat([header, payload]);
}

export function decodeGcpx(buf: Buffer): ComplexArray {
  if (buf.length < 12 || buf.readUInt32LE(0) !== MAGIC) {
    throw new Error("not a GCPX buffer (bad magic)");
  }
  if (buf.readUInt32LE(4) !== VERSION) {
    throw new Error(`unsupported GCPX version ${buf.readUInt32LE(4)}`);
  }
  const ndims = buf.readUInt32LE(8);
  const dims: number[] = [];
  for (let i = 0; i < ndims; i++) dims.push(buf.readUInt32LE(12 + 4 * i));
  const total = dims.reduce((a, b) => a * b, 1);
  const payload = buf.subarray(12 + 4 * ndims);
  if (payload.length !== 16 * total) {
    throw new Error(`payload is ${payload.length} bytes, expected ${16 * total}`);
  }
  // one marshal: copy out of the node Buffer into an aligned Float64Array
  const data = new Float64Array(2 * total);
  if (IS_LE) {
    payload.copy(Buffer.from(data.buffer, data.byteOffset, data.byteLength));
  } else {
    for (let i = 0; i < data.length; i++) data[i] = payload.readDoubleLE(8 * i);
  }
  return { dims, data };
}
