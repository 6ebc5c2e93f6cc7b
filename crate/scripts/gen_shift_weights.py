"""Reference table for the Bergman backward-shift weights.

gamma_n = (n+1) c_{n+1} / c_n with c_n = ||z^n||^{-1}, evaluated at 40 digits
from the closed-form norm, for the alpha values used by the test suite.
"""
import sys
from mpmath import mp, mpf, pi, loggamma, log, exp

mp.dps = 40
ALPHAS = ["0.3", "0.4", "0.5", "1.0"]
N_MAX = 1000


def log_norm_sq(n, a):
    x = 2 / a * (n + 1)
    return log(2 * pi / a) - x * log(2) + loggamma(x)


def main(path):
    with open(path, "w") as f:
        f.write("# alpha n gamma_n, gamma_n = (n+1) c_{n+1}/c_n at 40 digits\n")
        for s in ALPHAS:
            a = mpf(s)
            for n in range(N_MAX + 1):
                g = (n + 1) * exp((log_norm_sq(n, a) - log_norm_sq(n + 1, a)) / 2)
                f.write(f"{s} {n} {mp.nstr(g, 20, min_fixed=-1, max_fixed=-1)}\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "crates/core/data/shift_weights_hp.txt")
