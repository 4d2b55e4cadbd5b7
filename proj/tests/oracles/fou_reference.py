"""High-precision reference values for the fOU autocovariance (mpmath).

rho(t) = H/(2 lam^{2H}) [Gamma(2H) e^{-x} + e^{x} Gamma(2H, x) - e^{-x} x^{2H}/(2H) 1F1(2H; 2H+1; x)],
x = lam t. This is an algebraic rearrangement of the cosh-form kernel into
closed-form special functions, so it is independent of any quadrature.
"""
from mpmath import mp, mpf, gamma, gammainc, hyp1f1, exp, quad, cosh

mp.dps = 60

def rho(lam, H, t):
    lam, H, t = mpf(lam), mpf(H), mpf(t)
    x = lam * t; a = 2 * H
    if x == 0:
        return H * gamma(a) / lam**a
    up = exp(x) * gammainc(a, x, mp.inf)
    low = exp(-x) * x**a / a * hyp1f1(a, a + 1, x)
    return H / (2 * lam**a) * (gamma(a) * exp(-x) + up - low)

def rho_cosh(lam, H, t):
    lam, H, t = mpf(lam), mpf(H), mpf(t)
    x = lam * t; a = 2 * H
    I = quad(lambda s: s**(a - 1) * cosh(x - s), [0, x])
    return gamma(a + 1) / (2 * lam**a) * (cosh(x) - I / gamma(a))

def asym(lam, H, t, N):
    lam, H, t = mpf(lam), mpf(H), mpf(t)
    tot = mpf(0)
    for n in range(1, N + 1):
        p = mpf(1)
        for j in range(2 * n): p *= (2 * H - j)
        tot += lam**(-2 * n) * p * t**(2 * H - 2 * n)
    return tot / 2

if __name__ == "__main__":
    print("cross-check closed form vs cosh quadrature")
    for (l, H, t) in [(1, 0.7, 1), (2, 0.3, 0.5), (0.5, 0.9, 3), (1, 0.5, 2)]:
        print(l, H, t, mp.nstr(rho(l, H, t), 20), mp.nstr(rho_cosh(l, H, t), 20))
    print("worst relative error of the 5-term expansion")
    Hs = [0.02, 0.05, 0.1, 0.2, 0.3, 0.4, 0.45, 0.49, 0.499, 0.501, 0.51, 0.6, 0.7, 0.8, 0.9, 0.95, 0.98]
    for x in [25, 30, 35, 40, 45, 50]:
        errs = [(float(abs(rho(1, H, x) - asym(1, H, x, 5)) / abs(rho(1, H, x))), H) for H in Hs]
        print(x, max(errs))
    print("reference values")
    for (l, H, t) in [(1, 0.7, 1), (1, 0.3, 1), (2, 0.3, 0.5), (0.5, 0.9, 3), (1, 0.1, 2), (1, 0.05, 0.3),
                      (1, 0.75, 2), (1, 0.3, 25), (1, 0.7, 25), (1, 0.3, 40), (3, 0.6, 7)]:
        print("{%s, %s, %s, %s}," % (l, H, t, mp.nstr(rho(l, H, t), 20)))
