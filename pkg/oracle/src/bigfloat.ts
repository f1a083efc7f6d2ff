/**
 * Fixed-point big-decimal arithmetic on BigInt mantissas.
 *
 * A value is a bigint holding round(x * 10^SCALE). Seventy-two working
 * digits leave a generous guard band over the fifty digits the fixtures
 * publish, including through the repeated squarings inside exp().
 */

export const DIGITS = 72;
export const ONE: bigint = 10n ** BigInt(DIGITS);
export type BF = bigint;

export function fromInt(n: number | bigint): BF {
  return BigInt(n) * ONE;
}

/** Rounded integer division (half away from zero). */
export function divRound(a: bigint, b: bigint): bigint {
  if (b < 0n) {
    a = -a;
    b = -b;
  }
  const twice = 2n * a;
  const q = twice / b;
  return (q >= 0n ? q + 1n : q - 1n) / 2n;
}

export function fromRational(p: bigint, q: bigint): BF {
  return divRound(p * ONE, q);
}

export function mul(a: BF, b: BF): BF {
  return divRound(a * b, ONE);
}

export function div(a: BF, b: BF): BF {
  return divRound(a * ONE, b);
}

export function absBF(a: BF): BF {
  return a < 0n ? -a : a;
}

/** Floor integer square root by Newton iteration. */
export function isqrt(n: bigint): bigint {
  if (n < 0n) throw new RangeError("isqrt of negative");
  if (n < 2n) return n;
  let x = 1n << (BigInt(n.toString(2).length + 1) / 2n);
  for (;;) {
    const y = (x + n / x) / 2n;
    if (y >= x) return x;
    x = y;
  }
}

export function sqrt(x: BF): BF {
  if (x < 0n) throw new RangeError("sqrt of negative");
  // sqrt(m / 10^S) = sqrt(m * 10^S) / 10^S
  const root = isqrt(x * ONE);
  // one rounding nudge: pick the closer of root, root+1
  const low = root * root;
  const high = (root + 1n) * (root + 1n);
  return x * ONE - low <= high - x * ONE ? root : root + 1n;
}

/** exp(x) by argument halving and Taylor summation. */
export function exp(x: BF): BF {
  if (x === 0n) return ONE;
  let halvings = 0;
  let y = x;
  const quarter = ONE / 4n;
  while (absBF(y) > quarter) {
    y = divRound(y, 2n);
    halvings += 1;
  }
  let sum = ONE;
  let term = ONE;
  for (let j = 1; term !== 0n; j += 1) {
    term = divRound(mul(term, y), BigInt(j));
    sum += term;
  }
  for (let i = 0; i < halvings; i += 1) {
    sum = mul(sum, sum);
  }
  return sum;
}

export function powInt(x: BF, k: number): BF {
  if (k < 0) return div(ONE, powInt(x, -k));
  let result = ONE;
  let base = x;
  let e = k;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

let cachedPi: BF | null = null;

/** pi from Machin's formula; arctangent series in exact rationals. */
export function pi(): BF {
  if (cachedPi !== null) return cachedPi;
  const atanInv = (q: bigint): BF => {
    const q2 = q * q;
    let term = fromRational(1n, q);
    let total = 0n;
    for (let j = 0n; term !== 0n; j += 1n) {
      const contribution = divRound(term, 2n * j + 1n);
      total += j % 2n === 0n ? contribution : -contribution;
      term = divRound(term, q2);
    }
    return total;
  };
  cachedPi = 16n * atanInv(5n) - 4n * atanInv(239n);
  return cachedPi;
}

function cosTaylor(x: BF): BF {
  // |x| <= pi/2 after reduction
  const minusX2 = -mul(x, x);
  let term = ONE;
  let sum = ONE;
  for (let j = 1; term !== 0n; j += 1) {
    term = divRound(mul(term, minusX2), BigInt(2 * j * (2 * j - 1)));
    sum += term;
  }
  return sum;
}

/** cos(pi * p/q) for an exact rational argument. */
export function cospi(p: bigint, q: bigint): BF {
  if (q < 0n) {
    p = -p;
    q = -q;
  }
  // period 2 and evenness: reduce p/q into [0, 1]
  let r = p % (2n * q);
  if (r < 0n) r += 2n * q;
  if (r > q) r = 2n * q - r;
  // reflection about 1/2: cos(pi(1 - t)) = -cos(pi t)
  let sign = 1n;
  if (2n * r > q) {
    r = q - r;
    sign = -1n;
  }
  if (2n * r === q) return 0n;
  const x = mul(pi(), fromRational(r, q));
  return sign * cosTaylor(x);
}

/** Format with exactly `digits` significant decimal digits (no exponent). */
export function toDecimalString(x: BF, digits = 50): string {
  if (x === 0n) return "0.0";
  const negative = x < 0n;
  const mantissa = (negative ? -x : x).toString();
  // position of the leading digit relative to the decimal point:
  // value = mantissa * 10^-DIGITS
  const pointOffset = mantissa.length - DIGITS; // digits before the point
  const keep = mantissa.slice(0, digits);
  const nextDigit = mantissa.length > digits ? Number(mantissa[digits]) : 0;
  let rounded = BigInt(keep.padEnd(digits, "0"));
  if (nextDigit >= 5) rounded += 1n;
  let body = rounded.toString();
  let order = pointOffset; // exponent of the first kept digit + 1
  if (body.length > digits) {
    // rounding overflowed (e.g. 999...9 -> 1000...0)
    body = body.slice(0, digits);
    order += 1;
  }
  body = body.padStart(digits, "0");
  let text: string;
  if (order >= 1) {
    text = `${body.slice(0, order)}.${body.slice(order)}`;
  } else {
    text = `0.${"0".repeat(-order)}${body}`;
  }
  return negative ? `-${text}` : text;
}

export function parseDecimal(text: string): BF {
  const trimmed = text.trim();
  const negative = trimmed.startsWith("-");
  const unsigned = trimmed.replace(/^[+-]/, "");
  const [intPart, fracPartRaw = ""] = unsigned.split(".");
  const fracPart = fracPartRaw.slice(0, DIGITS).padEnd(DIGITS, "0");
  const value = BigInt(intPart + fracPart);
  return negative ? -value : value;
}
