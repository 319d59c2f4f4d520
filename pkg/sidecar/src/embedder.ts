/**
 * Hashed character-trigram embedder, re-implemented to the published scheme
 * so its vectors match the main toolkit's built-in embedder:
 *
 *  - lowercase, collapse whitespace runs, strip;
 *  - pad with `^` and `$`;
 *  - hash each UTF-8 trigram with FNV-1a 32-bit into 4096 buckets (counts);
 *  - L2-normalize; empty text maps to the all-zero vector.
 *
 * Trigrams are taken over Unicode code points, not UTF-16 units.
 */

export const DIMENSION = 4096;

const FNV_OFFSET = 0x811c9dc5;
const FNV_PRIME = 0x01000193;

const encoder = new TextEncoder();

export function fnv1a32(bytes: Uint8Array): number {
  let hash = FNV_OFFSET;
  for (const byte of bytes) {
    hash ^= byte;
    hash = Math.imul(hash, FNV_PRIME);
  }
  return hash >>> 0;
}

export function normalizeText(text: string): string {
  return text.toLowerCase().split(/\s+/u).filter(Boolean).join(" ");
}

export function embedText(text: string): number[] {
  const normalized = normalizeText(text);
  const vector = new Array<number>(DIMENSION).fill(0);
  if (!normalized) {
    return vector;
  }
  const codePoints = Array.from("^" + normalized + "$");
  for (let i = 0; i + 2 < codePoints.length; i++) {
    const gram = codePoints[i] + codePoints[i + 1] + codePoints[i + 2];
    vector[fnv1a32(encoder.encode(gram)) % DIMENSION] += 1;
  }
  let sumOfSquares = 0;
  for (const value of vector) {
    sumOfSquares += value * value;
  }
  const norm = Math.sqrt(sumOfSquares);
  for (let i = 0; i < vector.length; i++) {
    vector[i] /= norm;
  }
  return vector;
}
