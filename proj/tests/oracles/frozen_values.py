"""Independent high-precision evaluation of the constants frozen into the C++ tests.

Run with: python3 tests/oracles/frozen_values.py
"""
import mpmath as mp
import sympy as sp

mp.mp.dps = 40

# Poisson tail P(N >= 16) for mean alpha^2 = 4.
tail = mp.nsum(lambda n: mp.e**-4 * mp.mpf(4)**n / mp.factorial(n), [16, mp.inf])
print("poisson_tail(alpha=2, dim=16) =", mp.nstr(tail, 20))

# Vacuum vs coherent(1) statistical distance.
print("distance(vacuum, coherent(1)) =", mp.nstr(mp.acos(mp.e**-0.5), 20))

# Coefficients of the first-order ansatz, transcribed symbolically.
t, al, a2 = sp.symbols("t alpha a2", real=True)
E = lambda k: sp.exp(sp.I * k * t)
c0 = sp.Rational(1, 32) * a2 * sp.exp(-8 * sp.I * t) * (
    al**4 - 8 * al**4 * E(2) + 8 * al**4 * E(6) - al**4 * E(8) - 6 * al**2 * E(2)
    + 20 * al**2 * E(4) - 14 * al**2 * E(6) + 28 * al**2 * E(8) - 3 * E(4) - 4 * E(6) + 7 * E(8))
c1 = -1 / (4 * sp.sqrt(2)) * al * a2 * sp.exp(-7 * sp.I * t) * (
    al**2 - 6 * al**2 * E(2) + 3 * al**2 * E(4) + 2 * al**2 * E(6) - 3 * E(2) + 4 * E(4) - E(6))
c2 = sp.Rational(1, 8) * a2 * sp.exp(-6 * sp.I * t) * (
    3 * al**2 - 12 * al**2 * E(2) + 9 * al**2 * E(4) - 3 * E(2) - 2 * E(4) + 5 * E(6))
c3 = -1 / (2 * sp.sqrt(2)) * al * a2 * sp.exp(-5 * sp.I * t) * (1 - E(2)) ** 2
c4 = sp.Rational(1, 8) * a2 * sp.exp(-4 * sp.I * t) * (1 - E(4))
cs = [c0, c1, c2, c3, c4]
for (tv, av) in [(sp.pi / 4, 0), (sp.pi / 3, sp.Rational(1, 2)), (sp.Rational(7, 10), sp.Rational(13, 10))]:
    vals = [sp.N(c.subs({t: tv, al: av, a2: 1}), 20) for c in cs]
    print(f"c(t={tv}, alpha={av}, a2=1) =", [complex(v) for v in vals])

# Moments of x for the time-t coherent state: Gaussian with mean m = sqrt2 alpha cos t, variance 1/2.
x = sp.symbols("x", real=True)
m = sp.sqrt(2) * al * sp.cos(t)
dens = sp.exp(-(x - m) ** 2) / sp.sqrt(sp.pi)
def moment(k):
    return sp.simplify(sp.integrate(x**k * dens, (x, -sp.oo, sp.oo)))
mom = [moment(k) for k in range(5)]
print("coherent moments <x^k>:", mom)
reH1 = sp.simplify(mom[4] / 2)
E1 = sp.Rational(1, 16) * (3 + 6 * al**2 * (2 + al**2) + 2 * al**2 * ((6 + 4 * al**2) * sp.cos(2 * t) + al**2 * sp.cos(4 * t)))
print("Re<H1>/E1 simplified:", sp.simplify(sp.expand_trig(reH1 / E1)))

# Normalisation overlap 2 Re<psi0|psi1> = 2 Re sum_k c_k <x^k>, per unit a2.
ov = sum(cs[k] * mom[k] for k in range(5)).subs(a2, 1)
two_re = sp.simplify(sp.expand_complex(2 * sp.re(sp.expand(ov))))
print("2Re<psi0|psi1> at alpha=0:", sp.simplify(sp.trigsimp(two_re.subs(al, 0).rewrite(sp.cos))))
for (tv, av) in [(0, 0), (sp.pi / 4, 0), (sp.pi / 4, 1), (sp.Rational(1, 2), sp.Rational(1, 2))]:
    print(f"2Re<psi0|psi1>(t={tv}, alpha={av}) =", sp.N(two_re.subs({t: tv, al: av}), 20))
n_t = sp.Rational(1, 8) * (7 + 12 * al**2 + 2 * (-1 + al**2) * sp.cos(2 * t) - 5 * sp.cos(4 * t))
print("n(t) at alpha=0:", sp.simplify(n_t.subs(al, 0)))

# Ground-state B_t closed form.
E0 = sp.Rational(1, 2) + al**2
E2 = sp.Rational(1, 16) * (7 + 18 * al**2 + 44 * al**4 - 2 * (1 - 3 * al**2 + 6 * al**4) * sp.cos(2 * t) + (5 + 10 * al**2 + 4 * al**4) * sp.cos(4 * t))
Bt = -E0 * n_t + E1 + E2
print("B_t(alpha=0) =", sp.simplify(Bt.subs(al, 0)))
f = sp.lambdify(t, Bt.subs(al, 2) / E0.subs(al, 2), "mpmath")
print("min B_t/E0 at alpha=2 over [0,pi]:", min(f(mp.pi * i / 20000) for i in range(20001)))
