"""Reference GA construction used to produce the golden frozen sets.

Works in the linear domain with 30-digit arithmetic (mpmath), so no log
transforms are involved. Usage: python3 ga_oracle.py N K EBN0_DB > file
"""
import sys

import mpmath as mp

mp.mp.dps = 30


def phi(x):
    if x <= 0:
        return mp.mpf(1)
    if x < 10:
        return mp.exp(-0.4527 * x ** 0.86 + 0.0218)
    return mp.sqrt(mp.pi / x) * mp.exp(-x / 4) * (1 - mp.mpf(10) / (7 * x))


def phi_inv(y):
    lo, hi = mp.mpf(0), mp.mpf(1)
    while phi(hi) > y:
        hi *= 2
    for _ in range(150):
        mid = (lo + hi) / 2
        if phi(mid) > y:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def means(n, k, ebn0_db):
    es_n0 = mp.mpf(k) / n * mp.power(10, mp.mpf(ebn0_db) / 10)
    cur = [4 * es_n0]
    while len(cur) < n:
        nxt = []
        for m in cur:
            p = phi(m)
            nxt.append(phi_inv(p * (2 - p)))
            nxt.append(2 * m)
        cur = nxt
    return cur


def main():
    n, k, snr = int(sys.argv[1]), int(sys.argv[2]), float(sys.argv[3])
    m = means(n, k, snr)
    order = sorted(range(n), key=lambda i: (m[i], i))
    frozen = sorted(order[: n - k])
    print(n, k)
    print(" ".join(map(str, frozen)))


if __name__ == "__main__":
    main()
