"""Independent reference values for the C++ test suite (mpmath / numpy / scipy).

Run: python3 tests/oracle/oracle.py
Every value printed here is frozen into the C++ tests; nothing reads this at build time.
"""
import mpmath as mp
import numpy as np
from scipy.special import roots_jacobi

mp.mp.dps = 40


def kernel_coeff(alpha, beta, n):
    """Coefficient of xi^n in the kernel: B(a+1,b+1)/B(a+1,n+b+1)."""
    return mp.beta(alpha + 1, beta + 1) / mp.beta(alpha + 1, n + beta + 1)


def q_from_kernel(alpha, beta, deg):
    """Q = xi^m (1-xi)^(alpha+2) K(xi), from the basis expansion of K."""
    m = int(mp.ceil(beta))
    k = [kernel_coeff(alpha, beta, j - m) for j in range(deg + 1)]  # coefficient of xi^j in xi^m K
    p = [mp.binomial(alpha + 2, i) * (-1) ** i for i in range(deg + 1)]
    return [mp.fsum(p[i] * k[j - i] for i in range(j + 1)) for j in range(deg + 1)]


def kernel_value(alpha, beta, xi, terms=4000):
    m = int(mp.ceil(beta))
    return mp.fsum(kernel_coeff(alpha, beta, n) * mp.mpc(xi) ** n for n in range(-m, terms))


print("Q_{2,-0.5}:", [mp.nstr(c, 17) for c in q_from_kernel(2, mp.mpf(-0.5), 5)])
print("Q_{3,1.5}:", [mp.nstr(c, 17) for c in q_from_kernel(3, mp.mpf(1.5), 6)])
print("Q_{4,-0.25}:", [mp.nstr(c, 17) for c in q_from_kernel(4, mp.mpf(-0.25), 7)])
print("G_{1,-0.5}(1):", mp.nstr(mp.beta(-0.5, 3), 17))
print("K_{1.5,-0.8}(0.3+0.2i):", mp.nstr(kernel_value(1.5, mp.mpf(-0.8), mp.mpc(0.3, 0.2)), 17))
print("K_{3,1}(0.4-0.3i):", mp.nstr(kernel_value(3, 1, mp.mpc(0.4, -0.3)), 17))
print("K_{0.5,2.7}(-0.6+0.1i):", mp.nstr(kernel_value(0.5, mp.mpf(2.7), mp.mpc(-0.6, 0.1)), 17))

x, w = roots_jacobi(5, 2.0, -0.5)  # weight (1-x)^2 (1+x)^-0.5
t = (x + 1) / 2
w = w / 2 ** (2.0 - 0.5 + 1)
print("jacobi5 nodes:", [repr(v) for v in t])
print("jacobi5 weights:", [repr(v) for v in w])


def g_coeffs(alpha, beta):
    return [(-1) ** n * mp.binomial(alpha + 1, n) / (n + beta) for n in range(alpha + 2)]


roots = mp.polyroots(list(reversed(g_coeffs(3, mp.mpf(-0.3)))), maxsteps=200, extraprec=200)
print("roots G_{3,-0.3}:", sorted([(mp.nstr(r.real, 17), mp.nstr(r.imag, 17)) for r in roots]))

for a in range(0, 10):
    f = lambda b, a=a: mp.fsum(mp.binomial(a + 1, n) / (n + b) for n in range(a + 2))
    s = mp.findroot(f, (mp.mpf(-1) + mp.mpf("1e-30"), mp.mpf("-1e-30")), solver="anderson")
    print("s_%d =" % a, mp.nstr(s, 17))

# t_{1,1}: dense scan of the larger quadratic root modulus
bs = np.arange(-0.99999, -0.00001, 1e-5)
mods = []
for b in bs:
    r = np.roots([1 / (2 + b), -2 / (1 + b), 1 / b])
    mods.append(np.max(np.abs(r)))
i = int(np.argmin(mods))
print("t_{1,1} scan:", bs[i], mods[i])
