"""Independent estimate of the strong (mu*/d) and weak (alpha*) thresholds.

Weak: for each alpha the supremum of F over the region is found with a fine
grid followed by scipy bounded optimisation from the best cells; alpha* by
bisection. Used to sanity-check the C++ values, not as bit-exact reference.
"""
import numpy as np
from scipy.optimize import brentq, minimize


def H(x):
    x = np.clip(x, 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        v = -x * np.log2(x) - (1 - x) * np.log2(1 - x)
    return np.nan_to_num(v)


def strong_f(mu, beta):
    return (H(mu) + beta * H(mu / beta)) / (mu * np.log2(beta / mu))


def strong_max_mu(beta, d):
    return brentq(lambda mu: strong_f(mu, beta) - d, 1e-12, beta * (1 - 1e-12), xtol=1e-14)


def F(r1, r2, a, b, d):
    s = r1 + r2
    with np.errstate(divide="ignore", invalid="ignore"):
        last = np.where(s > 0, d * s * np.log2(np.where(s > 0, s, 1) / b), 0.0)
    return a * H(r1 / a) + (1 - a) * H(r2 / (1 - a)) + b * H(s / b) + last


def sup_F(a, b, d, N=600):
    g1 = (1 - np.exp(-d * a / b)) * b
    r1 = np.linspace(0, a, N + 1)
    r2 = np.linspace(0, min(1 - a, g1), N + 1)
    R1, R2 = np.meshgrid(r1, r2, indexing="ij")
    mask = (R1 + R2 <= g1) & ((R1 > 0) | (R2 > 0))
    vals = np.where(mask, F(R1, R2, a, b, d), -np.inf)
    best = vals.max()
    idx = np.argsort(vals.ravel())[-5:]
    for i in idx:
        x0 = np.array([R1.ravel()[i], R2.ravel()[i]])
        res = minimize(lambda z: -F(z[0], z[1], a, b, d) if (z[0] + z[1] <= g1 and z.min() >= 0 and z[0] <= a and z[1] <= 1 - a and z.sum() > 0) else 1e9,
                       x0, method="Nelder-Mead", options={"xatol": 1e-12, "fatol": 1e-14})
        best = max(best, -res.fun)
    return best


def weak_max_alpha(b, d):
    lo, hi = 1e-9, 1 - 1e-9
    for _ in range(50):
        mid = 0.5 * (lo + hi)
        if sup_F(mid, b, d) < 0:
            lo = mid
        else:
            hi = mid
    return lo


if __name__ == "__main__":
    for b in (0.3, 0.5, 0.7):
        for d in (4, 6, 8):
            mu = strong_max_mu(b, d)
            print(f"beta={b} d={d} strong mu*={mu:.10f} mu*/d={mu / d:.10f} weak alpha*={weak_max_alpha(b, d):.10f}")
