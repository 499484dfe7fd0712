#!/usr/bin/env python3
"""Regenerate the frozen constants asserted in the C++ tests.

Everything here is computed independently of the C++ code paths: spot values
of the spectral density and the rule-level mass errors via mpmath
arbitrary-precision arithmetic, the embedding series via its zeta closed
form, and the generator vectors via a from-scratch implementation of the
documented algorithm.

Usage: python3 gen_frozen_values.py   (requires mpmath)
"""

import mpmath as mp


def density(q, s):
    q = mp.mpf(q)
    b = mp.log(q)
    prefactor = q * b / (2 * mp.pi * (q + 1))
    num = mp.exp((mp.mpf(1) / 2 + 1j * s) * b) - mp.exp((-mp.mpf(1) / 2 - 1j * s) * b)
    den = mp.exp(1j * s * b) - mp.exp(-1j * s * b)
    c = mp.sqrt(q) / (q + 1) * num / den
    return prefactor / abs(c) ** 2


def gl_rule_error(q, n):
    """|sum_m w_m density(s_m) - 1| for the n-node rule on [0, tau]."""
    tau = mp.pi / mp.log(q)
    total = mp.mpf(0)
    for k in range((n + 1) // 2):
        x = mp.cos(mp.pi * (k + mp.mpf(3) / 4) / (n + mp.mpf(1) / 2))
        for _ in range(80):
            p0, p1 = mp.mpf(1), x
            for j in range(2, n + 1):
                p0, p1 = p1, ((2 * j - 1) * x * p1 - (j - 1) * p0) / j
            dp = n * (x * p1 - p0) / (x * x - 1)
            dx = p1 / dp
            x -= dx
            if abs(dx) < mp.mpf(10) ** (5 - mp.mp.dps):
                break
        w = 2 / ((1 - x * x) * dp * dp)
        points = [x] if (n % 2 == 1 and k == (n + 1) // 2 - 1) else [x, -x]
        for xx in points:
            total += w * tau / 2 * density(q, tau * (xx + 1) / 2)
    return abs(total - 1)


def splitmix64(seed):
    mask = (1 << 64) - 1
    state = seed
    while True:
        state = (state + 0x9E3779B97F4A7C15) & mask
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
        yield z ^ (z >> 31)


def fnv1a64(s):
    h = 0xCBF29CE484222325
    for ch in s.encode():
        h = ((h ^ ch) * 0x100000001B3) & ((1 << 64) - 1)
    return h


def main():
    mp.mp.dps = 40
    print("# density spot values (tests/test_spectral.cpp)")
    for q, frac in [(2, "1/2"), (3, "1/2"), (5, "1/2"), (2, "1/4"), (3, "1/4")]:
        tau = mp.pi / mp.log(q)
        s = tau / 2 if frac == "1/2" else tau / 4
        print(f"density(q={q}, s={frac}*tau) = {mp.nstr(density(q, s), 25)}")

    print("# embedding series (tests/test_lp.cpp)")
    print(f"sum k/(k-1)^3 = zeta(2)+zeta(3) = {mp.nstr(mp.zeta(2) + mp.zeta(3), 25)}")

    print("# rule-level mass errors (tests/test_spectral.cpp); dps=90 run")
    mp.mp.dps = 90
    for q, n in [(2, 64), (2, 128), (3, 128)]:
        print(f"rule error q={q} M={n}: {mp.nstr(gl_rule_error(q, n), 10)}")

    print("# generator vectors (tests/test_io.cpp)")
    for seed in (0, 42, 1234567):
        g = splitmix64(seed)
        vals = [next(g) for _ in range(3)]
        print(f"splitmix64({seed}): " + ", ".join(f"0x{v:016x}" for v in vals))
    g = splitmix64(42)
    print("uniform01(42):", ", ".join(f"{(next(g) >> 11) * 2.0 ** -53:.17g}" for _ in range(3)))
    print(f'fnv1a64("") = 0x{fnv1a64(""):016x}')
    print(f'fnv1a64("round-trip:q=2:R=4") = 0x{fnv1a64("round-trip:q=2:R=4"):016x}')


if __name__ == "__main__":
    main()
