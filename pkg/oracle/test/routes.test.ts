/**
 * Route-level checks: the dual-route agreement that `agree` enforces
 * during generation, plus a few closed-form anchors asserted directly.
 */

import assert from "node:assert/strict";
import { test } from "node:test";

import {
  ONE,
  absBF,
  div,
  exp,
  parseDecimal,
  sqrt,
} from "../src/bigfloat.js";
import { normalizerDirect, normalizerTransformed } from "../src/gaussian.js";
import {
  allModules,
  coherentModule,
  thetaModule,
  uncertaintyModule,
} from "../src/routes.js";

test("generation completes with every dual-route agreement satisfied", () => {
  // routes.ts throws on any disagreement beyond ~52 digits
  const modules = allModules();
  assert.equal(modules.length, 5);
  const counts = Object.fromEntries(
    modules.map((payload) => [payload.module, payload.entries.length])
  );
  assert.deepEqual(counts, {
    theta: 7,
    coherent: 5,
    mapping: 2,
    quasiprob: 4,
    uncertainty: 4,
  });
});

test("normalizer routes agree beyond the published precision", () => {
  const direct = normalizerDirect();
  const transformed = normalizerTransformed();
  assert.ok(absBF(direct - transformed) <= ONE / 10n ** 55n);
});

test("truncation orders come out as certified integers", () => {
  const theta = thetaModule();
  const byName = new Map(theta.entries.map((item) => [item.name, item]));
  assert.equal(
    byName.get("truncation_order_tau_inv_pi_tol_1e-12")!.value[0].slice(0, 2),
    "6."
  );
  assert.equal(
    byName.get("truncation_order_tau_100_tol_1e-12")!.value[0].slice(0, 2),
    "1."
  );
});

test("kernel lattice zero is emitted as an exact zero", () => {
  const coherent = coherentModule();
  const zero = coherent.entries.find(
    (item) => item.name === "overlap_kernel_l1_alpha_pi"
  );
  assert.ok(zero);
  assert.equal(zero.value[0], "0.0");
});

test("next-neighbor weight equals 1/e", () => {
  const uncertainty = uncertaintyModule();
  const s2 = uncertainty.entries.find(
    (item) => item.name === "next_neighbor_weight_s2"
  );
  assert.ok(s2);
  const value = parseDecimal(s2.value[0]);
  assert.ok(absBF(value - exp(-ONE)) <= ONE / 10n ** 49n);
});

test("vacuum center amplitude is the inverse square root of the normalizer", () => {
  const coherent = coherentModule();
  const c0 = coherent.entries.find((item) => item.name === "vacuum_c0");
  assert.ok(c0);
  const value = parseDecimal(c0.value[0]);
  const expected = div(ONE, sqrt(normalizerDirect()));
  assert.ok(absBF(value - expected) <= ONE / 10n ** 49n);
});
