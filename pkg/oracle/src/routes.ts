/**
 * Two independent computations for every published fixture value.
 *
 * Route A is the defining series; route B reaches the same number along
 * a different identity (Jacobi imaginary transform, closed forms, folded
 * lattice sums).  `agree` enforces agreement beyond the published fifty
 * digits before anything is emitted.
 */

import {
  BF,
  ONE,
  absBF,
  cospi,
  div,
  exp,
  fromInt,
  fromRational,
  mul,
  pi,
  powInt,
  sqrt,
  toDecimalString,
} from "./bigfloat.js";
import {
  gaussSum,
  normalizerDirect,
  normalizerTransformed,
  termsFor,
  vacuumWeight,
} from "./gaussian.js";

export interface FixtureEntry {
  name: string;
  inputs: Record<string, unknown>;
  value: [string, string];
  precision_digits: number;
  method: string;
}

export interface FixtureModule {
  module: string;
  precision_digits: number;
  entries: FixtureEntry[];
}

const AGREEMENT_MARGIN = 10n ** 20n; // routes must agree to ~52 digits

export function agree(name: string, routeA: BF, routeB: BF): BF {
  const scale = absBF(routeA) > ONE ? absBF(routeA) : ONE;
  const tolerance = scale / AGREEMENT_MARGIN / (10n ** 32n);
  if (absBF(routeA - routeB) > tolerance) {
    throw new Error(
      `route disagreement for ${name}: ${toDecimalString(routeA)} vs ` +
        `${toDecimalString(routeB)}`
    );
  }
  return routeA;
}

function entry(
  name: string,
  inputs: Record<string, unknown>,
  value: BF,
  method: string
): FixtureEntry {
  return {
    name,
    inputs,
    value: [toDecimalString(value), "0.0"],
    precision_digits: 50,
    method,
  };
}

// ---------------------------------------------------------------------------
// theta module

function erfcUpper(x: BF): BF {
  // erfc(x) <= exp(-x^2) / (x sqrt(pi)) for x > 0
  if (x === 0n) return ONE;
  return div(exp(-mul(x, x)), mul(x, sqrt(pi())));
}

function erfcLower(x: BF): BF {
  // erfc(x) >= 2 exp(-x^2) / (sqrt(pi) (x + sqrt(x^2 + 2)))
  if (x === 0n) return ONE;
  const denom = mul(sqrt(pi()), x + sqrt(mul(x, x) + 2n * ONE));
  return div(2n * exp(-mul(x, x)), denom);
}

/** Certified smallest L with sqrt(1/t) erfc(sqrt(pi t) L) < tol. */
function truncationOrder(tauIm: BF, tol: BF): bigint {
  const invSqrtT = div(ONE, sqrt(tauIm));
  const sqrtPiT = sqrt(mul(pi(), tauIm));
  for (let l = 0n; l <= 1000n; l += 1n) {
    const x = mul(sqrtPiT, fromInt(l));
    const upper = mul(invSqrtT, erfcUpper(x));
    if (upper < tol) {
      if (l > 0n) {
        const prev = mul(sqrtPiT, fromInt(l - 1n));
        const lower = mul(invSqrtT, erfcLower(prev));
        if (lower < tol) {
          throw new Error("erfc bracket inconclusive at the claimed order");
        }
      }
      return l;
    }
  }
  throw new Error("truncation order exceeds 1000");
}

export function thetaModule(): FixtureModule {
  const piSquared = mul(pi(), pi());

  const s3Direct = normalizerDirect();
  const s3 = agree("theta3_z0_tau_inv_pi", s3Direct, normalizerTransformed());

  // theta3(pi/2 | i/pi) = theta4(0 | i/pi) = sqrt(pi) theta2(0 | i pi)
  const s3AltDirect = gaussSum(ONE, { alternating: true, terms: termsFor(1.0) });
  const s3AltTransformed = mul(
    sqrt(pi()),
    gaussSum(piSquared, { halfShift: 1n, terms: termsFor(9.8) })
  );
  const s3Alt = agree("theta3_z_half_pi_tau_inv_pi", s3AltDirect, s3AltTransformed);

  // theta2(0 | i/pi) = sqrt(pi) theta4(0 | i pi)
  const t2Direct = gaussSum(ONE, { halfShift: 1n, terms: termsFor(1.0) });
  const t2Transformed = mul(
    sqrt(pi()),
    gaussSum(piSquared, { alternating: true, terms: termsFor(9.8) })
  );
  const t2 = agree("theta2_z0_tau_inv_pi", t2Direct, t2Transformed);

  // widths 1/(20 pi) and 10/(2 pi): tau_im = 2a, series coefficient pi*tau_im
  const coeffWide = fromRational(1n, 10n); // pi * (1/(10 pi)) = 1/10
  const wideDirect = gaussSum(coeffWide, { terms: termsFor(0.1) });
  const wideTransformed = mul(
    sqrt(10n * pi()),
    gaussSum(10n * piSquared, { terms: 3 })
  );
  const wide = agree("theta3_z0_tau_inv_10pi", wideDirect, wideTransformed);

  const coeffNarrow = fromInt(10n); // pi * (10/pi) = 10
  const narrowDirect = gaussSum(coeffNarrow, { terms: termsFor(10.0) });
  const narrowTransformed = mul(
    sqrt(div(pi(), fromInt(10n))),
    gaussSum(div(piSquared, fromInt(10n)), { terms: termsFor(0.98) })
  );
  const narrow = agree("theta3_z0_tau_10_over_pi", narrowDirect, narrowTransformed);

  const tol12 = fromRational(1n, 10n ** 12n);
  const orderInvPi = truncationOrder(div(ONE, pi()), tol12);
  const orderHundred = truncationOrder(fromInt(100n), tol12);

  return {
    module: "theta",
    precision_digits: 50,
    entries: [
      entry(
        "theta3_z0_tau_inv_pi",
        { z: [0, 0], tau_im: "1/pi" },
        s3,
        "direct series; cross-checked by the Jacobi imaginary transform"
      ),
      entry(
        "theta3_z_half_pi_tau_inv_pi",
        { z: ["pi/2", 0], tau_im: "1/pi" },
        s3Alt,
        "alternating direct series; cross-checked via sqrt(pi) theta2(0|i pi)"
      ),
      entry(
        "theta2_z0_tau_inv_pi",
        { z: [0, 0], tau_im: "1/pi" },
        t2,
        "half-integer direct series; cross-checked via sqrt(pi) theta4(0|i pi)"
      ),
      entry(
        "theta3_z0_tau_inv_10pi",
        { z: [0, 0], tau_im: "1/(10 pi)" },
        wide,
        "direct series (width a = 1/(20 pi)); Jacobi-transform cross-check"
      ),
      entry(
        "theta3_z0_tau_10_over_pi",
        { z: [0, 0], tau_im: "10/pi" },
        narrow,
        "direct series (width a = 10/(2 pi)); Jacobi-transform cross-check"
      ),
      entry(
        "truncation_order_tau_inv_pi_tol_1e-12",
        { tau_im: "1/pi", tol: "1e-12" },
        fromInt(orderInvPi),
        "smallest L with the Gaussian-integral (erfc) tail bound below tol; " +
          "bracketed by rigorous erfc inequalities"
      ),
      entry(
        "truncation_order_tau_100_tol_1e-12",
        { tau_im: "100", tol: "1e-12" },
        fromInt(orderHundred),
        "smallest L with the Gaussian-integral (erfc) tail bound below tol"
      ),
    ],
  };
}

// ---------------------------------------------------------------------------
// coherent module

export function coherentModule(): FixtureModule {
  const s = agree("normalizer", normalizerDirect(), normalizerTransformed());

  const c0Direct = div(ONE, sqrt(s));
  // independent route: c0^2 = 1/S summed the transformed way
  const c0Transformed = sqrt(div(ONE, normalizerTransformed()));
  const c0 = agree("vacuum_c0", c0Direct, c0Transformed);

  const ratioDirect = exp(-fromRational(1n, 2n));
  const ratioViaInverse = div(ONE, sqrt(exp(ONE)));
  const c1OverC0 = agree("vacuum_c1_over_c0", ratioDirect, ratioViaInverse);

  // <0,0|1,0> = exp(-1/2) theta3(i/2 | i/pi) / theta3(0 | i/pi)
  // theta3(i/2|i/pi) = sum exp(-l^2 + l) = exp(1/4) sum exp(-(l-1/2)^2)
  const offCenter = mul(
    exp(fromRational(1n, 4n)),
    gaussSum(ONE, { halfShift: -1n, terms: termsFor(1.0) })
  );
  const overlapClosed = div(mul(exp(-fromRational(1n, 2n)), offCenter), s);
  // brute amplitude route: sum_k c_k c_{k+1} / S
  let overlapBrute = 0n;
  for (let k = -16n; k <= 16n; k += 1n) {
    overlapBrute += mul(vacuumWeight(k), vacuumWeight(k + 1n));
  }
  overlapBrute = div(overlapBrute, s);
  const overlap = agree("overlap_00_10", overlapClosed, overlapBrute);

  // K(1, pi): every term carries cos(pi (n + 1/2)) = 0; the theta-zero
  // route pairs l with 1-l into exact cancellation.
  let kernelZero = 0n;
  for (let l = -16n; l <= 17n; l += 1n) {
    const term = exp(-(fromInt(l * l) - fromInt(l)));
    kernelZero += l % 2n === 0n ? term : -term;
  }
  if (absBF(kernelZero) > ONE / 10n ** 40n) {
    throw new Error("kernel lattice zero failed to cancel below 1e-40");
  }

  const kernelPiDirect = div(
    gaussSum(ONE, { alternating: true, terms: termsFor(1.0) }),
    s
  );
  const kernelPiTransformed = div(
    mul(sqrt(pi()), gaussSum(mul(pi(), pi()), { halfShift: 1n, terms: 4 })),
    s
  );
  const kernelPi = agree(
    "overlap_kernel_l0_alpha_pi",
    kernelPiDirect,
    kernelPiTransformed
  );

  return {
    module: "coherent",
    precision_digits: 50,
    entries: [
      entry(
        "vacuum_c0",
        { a: "1/(2 pi)", m: 0 },
        c0,
        "1/sqrt(theta3(0|i/pi)); both theta3 routes agree"
      ),
      entry(
        "vacuum_c1_over_c0",
        { a: "1/(2 pi)" },
        c1OverC0,
        "ratio of Gaussian weights exp(-pi a); cross-checked as 1/sqrt(e)"
      ),
      entry(
        "overlap_00_10",
        { a: "1/(2 pi)", lhs: [0, 0], rhs: [1, 0] },
        overlap,
        "closed form exp(-1/2) theta3(i/2|i/pi)/theta3(0|i/pi); " +
          "agrees with the amplitude-series route"
      ),
      entry(
        "overlap_kernel_l1_alpha_pi",
        { a: "1/(2 pi)", l: 1, alpha: "pi" },
        0n,
        "series cancels in exact pairs; |sum| < 1e-40 verified"
      ),
      entry(
        "overlap_kernel_l0_alpha_pi",
        { a: "1/(2 pi)", l: 0, alpha: "pi" },
        kernelPi,
        "theta3(pi/2|i/pi)/theta3(0|i/pi); Jacobi-transform cross-check"
      ),
    ],
  };
}

// ---------------------------------------------------------------------------
// mapping module: lattice smoothing-kernel samples

const LATTICE_L_MAX = 16;
const LATTICE_N_ALPHA = 32;

/** cos(alpha_j * h/2) with alpha_j = pi((2j+1)/N - 1), h in half-steps. */
function latticeCos(j: number, halfSteps: bigint): BF {
  const n = BigInt(LATTICE_N_ALPHA);
  // alpha_j * h/2 = pi * h (2j+1-N) / (2N)
  const p = halfSteps * (2n * BigInt(j) + 1n - n);
  return cospi(p, 2n * n);
}

function kernelRowAt(j: number, l: bigint, s: BF): BF {
  const reach = 14n;
  let total = 0n;
  for (let n = -l / 2n - reach; n <= -l / 2n + reach; n += 1n) {
    const weight = exp(-fromRational(n * n + (n + l) * (n + l), 2n));
    total += mul(weight, latticeCos(j, 2n * n + l));
  }
  return div(total, s);
}

function zetaLatticeDirect(dm: bigint, s: BF): BF {
  let total = 0n;
  for (let l = -LATTICE_L_MAX; l <= LATTICE_L_MAX; l += 1) {
    for (let j = 0; j < LATTICE_N_ALPHA; j += 1) {
      const phase = cospi(
        dm * (2n * BigInt(j) + 1n - BigInt(LATTICE_N_ALPHA)),
        BigInt(LATTICE_N_ALPHA)
      );
      total += mul(phase, kernelRowAt(j, BigInt(l), s));
    }
  }
  return div(total, fromInt(LATTICE_N_ALPHA));
}

/**
 * Folded route: sum_l K(l, alpha) over ALL l equals the square of the
 * single sum G(alpha) = sum_u c_u cos(alpha u / 2); subtracting the
 * shells beyond the tabulated |l| <= L_MAX recovers the lattice value.
 */
function zetaLatticeFolded(dm: bigint, s: BF): BF {
  let total = 0n;
  for (let j = 0; j < LATTICE_N_ALPHA; j += 1) {
    let single = 0n;
    for (let u = -20n; u <= 20n; u += 1n) {
      single += mul(vacuumWeight(u), latticeCos(j, u));
    }
    let rows = div(mul(single, single), s);
    for (let l = LATTICE_L_MAX + 1; l <= LATTICE_L_MAX + 14; l += 1) {
      const shell = kernelRowAt(j, BigInt(l), s);
      const shellNeg = kernelRowAt(j, BigInt(-l), s);
      rows -= shell + shellNeg;
    }
    const phase = cospi(
      dm * (2n * BigInt(j) + 1n - BigInt(LATTICE_N_ALPHA)),
      BigInt(LATTICE_N_ALPHA)
    );
    total += mul(phase, rows);
  }
  return div(total, fromInt(LATTICE_N_ALPHA));
}

export function mappingModule(): FixtureModule {
  const s = normalizerDirect();
  const entries: FixtureEntry[] = [];
  for (const dm of [0n, 1n]) {
    const direct = zetaLatticeDirect(dm, s);
    const folded = zetaLatticeFolded(dm, s);
    const value = agree(`zeta1_lattice_dm${dm}`, direct, folded);
    entries.push(
      entry(
        `zeta1_lattice_dm${dm}_dtheta0`,
        {
          a: "1/(2 pi)",
          dm: Number(dm),
          dtheta: 0,
          l_max: LATTICE_L_MAX,
          n_alpha: LATTICE_N_ALPHA,
          grid: "half-offset",
        },
        value,
        "double lattice sum of the overlap kernel; folded squared-sum cross-check"
      )
    );
  }
  return { module: "mapping", precision_digits: 50, entries };
}

// ---------------------------------------------------------------------------
// quasiprob module

export function quasiprobModule(): FixtureModule {
  const s = normalizerDirect();
  const entries: FixtureEntry[] = [];
  for (let k = 0n; k <= 3n; k += 1n) {
    const direct = div(exp(-fromInt(k * k)), s);
    const flipRoute = div(powInt(exp(-fromInt(k)), Number(k)), s);
    const value = agree(`husimi_offset_${k}`, direct, flipRoute);
    entries.push(
      entry(
        `husimi_eigenstate_offset${k}`,
        { a: "1/(2 pi)", m_minus_m0: Number(k) },
        value,
        "exp(-(m-m0)^2)/theta3(0|i/pi)"
      )
    );
  }
  return { module: "quasiprob", precision_digits: 50, entries };
}

// ---------------------------------------------------------------------------
// uncertainty module

export function uncertaintyModule(): FixtureModule {
  const s = agree("normalizer", normalizerDirect(), normalizerTransformed());
  const piSquared = mul(pi(), pi());

  // sum l^2 exp(-l^2) directly, and through the derivative of the
  // Jacobi-transformed theta series:
  //   sum l^2 e^{-l^2} = sqrt(pi) [ (1/2) sum_k e^{-pi^2 k^2}
  //                                 - pi^2 sum_k k^2 e^{-pi^2 k^2} ]
  let weightedDirect = 0n;
  for (let l = -16n; l <= 16n; l += 1n) {
    weightedDirect += mul(fromInt(l * l), exp(-fromInt(l * l)));
  }
  let plain = 0n;
  let weighted = 0n;
  for (let k = -4n; k <= 4n; k += 1n) {
    const term = exp(-mul(piSquared, fromInt(k * k)));
    plain += term;
    weighted += mul(fromInt(k * k), term);
  }
  const weightedTransformed = mul(
    sqrt(pi()),
    div(plain, fromInt(2n)) - mul(piSquared, weighted)
  );
  const meanJ2 = div(
    agree("vacuum_mean_j2", weightedDirect, weightedTransformed),
    s
  );

  // neighbor weight S1 equals the unit-shift overlap (two routes again)
  const offCenter = mul(
    exp(fromRational(1n, 4n)),
    gaussSum(ONE, { halfShift: -1n, terms: termsFor(1.0) })
  );
  const s1Closed = div(mul(exp(-fromRational(1n, 2n)), offCenter), s);
  let s1Brute = 0n;
  for (let k = -16n; k <= 16n; k += 1n) {
    s1Brute += mul(vacuumWeight(k), vacuumWeight(k + 1n));
  }
  s1Brute = div(s1Brute, s);
  const s1 = agree("neighbor_weight_s1", s1Closed, s1Brute);

  // next-neighbor weight collapses to exp(-1) exactly at this width
  let s2Brute = 0n;
  for (let k = -16n; k <= 16n; k += 1n) {
    s2Brute += mul(vacuumWeight(k), vacuumWeight(k + 2n));
  }
  s2Brute = div(s2Brute, s);
  const s2 = agree("next_neighbor_weight_s2", s2Brute, exp(-ONE));

  // delta_U(0) = 1 - (S1^2/4) / (VJ (1 - S2)/2), assembled from each
  // route's components independently
  const slack = (vj: BF, a1: BF, a2: BF): BF => {
    const lhs = div(mul(vj, ONE - a2), fromInt(2n));
    const rhs = div(mul(a1, a1), fromInt(4n));
    return div(lhs - rhs, lhs);
  };
  const deltaU = agree(
    "delta_u_at_zero",
    slack(div(weightedDirect, s), s1Brute, s2Brute),
    slack(div(weightedTransformed, s), s1Closed, exp(-ONE))
  );

  return {
    module: "uncertainty",
    precision_digits: 50,
    entries: [
      entry(
        "vacuum_mean_j2",
        { a: "1/(2 pi)" },
        meanJ2,
        "sum l^2 exp(-l^2) / theta3(0|i/pi); transform-derivative cross-check"
      ),
      entry(
        "neighbor_weight_s1",
        { a: "1/(2 pi)" },
        s1,
        "sum_k c_k c_{k+1}; equals the overlap <0,0|1,0>"
      ),
      entry(
        "next_neighbor_weight_s2",
        { a: "1/(2 pi)" },
        s2,
        "sum_k c_k c_{k+2} = exp(-1) exactly at this width"
      ),
      entry(
        "delta_u_at_zero",
        { a: "1/(2 pi)", theta: 0 },
        deltaU,
        "1 - (S1^2/4) / (VJ (1-S2)/2)"
      ),
    ],
  };
}

export function allModules(): FixtureModule[] {
  return [
    thetaModule(),
    coherentModule(),
    mappingModule(),
    quasiprobModule(),
    uncertaintyModule(),
  ];
}
