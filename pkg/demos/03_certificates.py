"""Existence certificates for the three built-in problems."""

from fracbvp import certify, compute_deltas
from fracbvp.builtin import EXAMPLES
from fracbvp.problem import nondegeneracy_thresholds

## Constants and verdicts
for name, factory in EXAMPLES.items():
    spec = factory()
    cert = certify(spec)
    d1, d2, d3 = compute_deltas(spec)
    print(f"{name}: q={spec.q:.4f} nu={spec.nu:.4f} p={spec.p:.4f} alpha={spec.alpha:.4f} beta={spec.beta:.4f}")
    print(f"  Delta = ({d1:.4f}, {d2:.4f}, {d3:.4f})  Omega = {cert.omega:.4f}  "
          f"Omega - 1/Gamma(q+1) = {cert.omega_minus:.4f}")
    if cert.lipschitz_used is not None:
        print(f"  L = {cert.lipschitz_used:.6g}  L*Omega = {cert.l_omega:.4f}  "
              f"L*(Omega - 1/Gamma(q+1)) = {cert.l_omega_minus:.4f}")
    print(f"  banach={cert.banach_ok} krasnoselskii={cert.krasnoselskii_ok} schaefer={cert.schaefer_ok}")

## Where the problem degenerates
# alpha must avoid Gamma(p+1)/eta^p and beta must avoid Gamma(2-nu)/eta^(1-nu)
spec = EXAMPLES["example2"]()
a_thr, b_thr = nondegeneracy_thresholds(spec)
print(f"example2 thresholds: alpha != {a_thr:.4f}, beta != {b_thr:.4f}")
bad = EXAMPLES["example1"]()
a_thr, _ = nondegeneracy_thresholds(bad)
print("example1 with alpha at its threshold:", certify(EXAMPLES["example1"](alpha=a_thr)).nondegenerate)

## How large may L be?
spec = EXAMPLES["example1"]()
omega = certify(spec).omega
print(f"example1: contraction for any L < 1/Omega = {1 / omega:.5f} (given L = {spec.lipschitz:.5f})")
