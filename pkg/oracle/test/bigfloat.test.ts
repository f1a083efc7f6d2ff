import assert from "node:assert/strict";
import { test } from "node:test";

import {
  ONE,
  absBF,
  cospi,
  div,
  exp,
  fromInt,
  fromRational,
  mul,
  parseDecimal,
  pi,
  sqrt,
  toDecimalString,
} from "../src/bigfloat.js";

// The published reference literals carry 52 digits, so their own rounding
// sits near 1e-51; compare just above that.
const TOL_LITERAL = ONE / 10n ** 50n;

function close(a: bigint, b: bigint, tol: bigint = TOL_LITERAL): void {
  assert.ok(
    absBF(a - b) <= tol,
    `${toDecimalString(a)} != ${toDecimalString(b)}`
  );
}

test("pi matches the published digits", () => {
  close(
    pi(),
    parseDecimal("3.141592653589793238462643383279502884197169399375106")
  );
});

test("exp(1) matches the published digits", () => {
  close(
    exp(ONE),
    parseDecimal("2.71828182845904523536028747135266249775724709369996")
  );
});

test("exp handles large negative arguments through halving", () => {
  close(
    exp(-ONE),
    parseDecimal("0.3678794411714423215955237701614608674458111310317678")
  );
  // exp(-20) * exp(20) = 1
  close(mul(exp(fromInt(-20n)), exp(fromInt(20n))), ONE, ONE / 10n ** 50n);
});

test("sqrt(2) matches the published digits", () => {
  close(
    sqrt(fromInt(2n)),
    parseDecimal("1.414213562373095048801688724209698078569671875376948")
  );
});

test("cospi at rational points", () => {
  close(cospi(1n, 3n), fromRational(1n, 2n));
  assert.equal(cospi(1n, 2n), 0n);
  close(cospi(2n, 1n), ONE);
  close(cospi(1n, 1n), -ONE);
  close(
    cospi(1n, 7n),
    parseDecimal("0.9009688679024191262361023195074450511659191621318572")
  );
  // evenness and period 2
  close(cospi(-5n, 7n), cospi(5n, 7n), 0n);
  close(cospi(5n + 14n, 7n), cospi(5n, 7n), 0n);
});

test("division round trip", () => {
  const x = fromRational(355n, 113n);
  close(mul(div(x, fromInt(7n)), fromInt(7n)), x, 10n);
});

test("decimal formatting matches the fixture style", () => {
  assert.equal(toDecimalString(0n), "0.0");
  assert.equal(
    toDecimalString(fromInt(6n)),
    "6.0000000000000000000000000000000000000000000000000"
  );
  const tiny = fromRational(69619324106845602080758499911196168n, 10n ** 39n);
  assert.ok(toDecimalString(tiny).startsWith("0.00006961932410684560208075849991119616"));
  assert.equal(toDecimalString(-fromRational(1n, 4n)).slice(0, 7), "-0.2500");
});
