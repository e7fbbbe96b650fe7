"""Gamma, Beta and fractional operators applied to powers of t."""

import numpy as np

from fracbvp import beta, caputo_of_monomial, gamma, rl_integral_of_monomial

## Gamma and Beta
for x in (0.5, 1.0, 4 / 3, 8 / 3):
    print(f"Gamma({x:.4f}) = {gamma(x):.12f}")
print("B(5/4, 5/3) =", beta(5 / 4, 5 / 3))
print("Gamma(a)Gamma(b)/Gamma(a+b) =", gamma(5 / 4) * gamma(5 / 3) / gamma(5 / 4 + 5 / 3))

## Riemann-Liouville integrals of t^mu
# I^p t^mu = Gamma(mu+1)/Gamma(mu+p+1) t^(mu+p)
t = np.linspace(0.1, 1.0, 4)
for mu in (0, 1, 2):
    vals = [rl_integral_of_monomial(mu, 1.5, ti) for ti in t]
    print(f"I^1.5 t^{mu}:", np.round(vals, 6))

## Caputo derivatives of t^k
# the first argument is k + 1; 1 and t are annihilated by order 4/3,
# t^2 gives 2/Gamma(5/3) t^(2/3)
for k in (0, 1, 2, 2.5):
    print(f"D^(4/3) t^{k} at 1/2 = {caputo_of_monomial(k + 1, 4 / 3, 0.5):.10f}")

## Composition: D^a I^a t^2 gives back t^2
# I^a t^2 = Gamma(3)/Gamma(3+a) t^(2+a)
a = 0.7
lhs = gamma(3) / gamma(3 + a) * caputo_of_monomial(3 + a, a, 0.5)
print("D^a I^a t^2 at 1/2 =", lhs, " vs ", 0.25)
