/**
 * Gaussian lattice sums and the vacuum-amplitude machinery shared by the
 * fixture routes.  Every sum runs far enough that the neglected tail sits
 * below the working precision (72 digits), not merely below the published
 * 50 digits.
 */

import { BF, ONE, div, exp, fromRational, mul, pi, sqrt } from "./bigfloat.js";

/**
 * sum over l of sign(l) * exp(-coeff * (l + halfShift/2)^2)
 * with sign(l) = (-1)^l when `alternating`.
 */
export function gaussSum(
  coeff: BF,
  options: { halfShift?: 0n | 1n | -1n; alternating?: boolean; terms: number }
): BF {
  const halfShift = options.halfShift ?? 0n;
  let total = 0n;
  for (let l = -options.terms; l <= options.terms; l += 1) {
    const twice = 2n * BigInt(l) + halfShift; // 2l + s, so (l + s/2) = twice/2
    const square = fromRational(twice * twice, 4n);
    let term = exp(-mul(coeff, square));
    if (options.alternating && ((l % 2) + 2) % 2 === 1) term = -term;
    total += term;
  }
  return total;
}

/** Number of terms so exp(-coeffApprox * terms^2) underflows 72 digits. */
export function termsFor(coeffApprox: number): number {
  return Math.max(3, Math.ceil(Math.sqrt(170.0 / coeffApprox)) + 3);
}

/** theta3(0 | i/pi) = sum exp(-l^2), the boson normalizer squared. */
export function normalizerDirect(): BF {
  return gaussSum(ONE, { terms: termsFor(1.0) });
}

/** The same value through the Jacobi imaginary transformation. */
export function normalizerTransformed(): BF {
  const piSquared = mul(pi(), pi());
  return mul(sqrt(pi()), gaussSum(piSquared, { terms: termsFor(9.8) }));
}

/** Unnormalized vacuum weight exp(-k^2/2) at the working width. */
export function vacuumWeight(k: bigint): BF {
  return exp(-fromRational(k * k, 2n));
}

/**
 * Row of the vacuum-displacement kernel on the half-offset lattice:
 * K(l, alpha_j) = sum_n c_{n+l} c_n cos(alpha_j (n + l/2)) / S
 * where alpha_j = pi((2j+1)/nAlpha - 1).  Returned unnormalized
 * (multiply by 1/S outside); cosines are taken at exact rational
 * multiples of pi through `cosAtLattice`.
 */
export function kernelRowTerm(
  n: bigint,
  l: bigint,
  cosAtLattice: (halfSteps: bigint) => BF
): BF {
  const weight = exp(-fromRational(n * n + (n + l) * (n + l), 2n));
  return mul(weight, cosAtLattice(2n * n + l));
}

/** exp(-x) for a small nonnegative integer numerator over a denominator. */
export function expRational(p: bigint, q: bigint): BF {
  return exp(fromRational(p, q));
}

/** Convenience: a/b for BF values. */
export function ratio(a: BF, b: BF): BF {
  return div(a, b);
}
