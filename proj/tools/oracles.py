#!/usr/bin/env python3
# Copyright 2026 The xcorpus Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Reference values for the unit tests, computed with plain numpy loops.

Run `python3 tools/oracles.py` and compare with the constants frozen in
tests/unit/*.cpp. Nothing here imports or mirrors the C++ code paths.
"""

import math

import numpy as np

A = np.array([[0.1, -0.3, 0.5], [0.7, 0.2, -0.4], [-0.6, 0.9, 0.05]])
B = np.array([[0.3, 0.3, -0.2], [-0.5, 0.1, 0.8]])
SIGMAS = [0.5, 1.0, 2.0]
MULTS = [0.25, 0.5, 1.0, 2.0, 4.0]


def rbf(x, y, sigma2s):
    out = np.zeros((len(x), len(y)))
    for i, xi in enumerate(x):
        for j, yj in enumerate(y):
            d = float(np.sum((xi - yj) ** 2))
            out[i, j] = sum(math.exp(-d / (2 * s2)) for s2 in sigma2s) / len(sigma2s)
    return out


def median_sq(x, y):
    z = np.vstack([x, y])
    d = [float(np.sum((z[i] - z[j]) ** 2)) for i in range(len(z)) for j in range(i + 1, len(z))]
    return float(np.median(d))


def mmd(x, y, s2):
    return rbf(x, x, s2).mean() - 2 * rbf(x, y, s2).mean() + rbf(y, y, s2).mean()


def lmmd(xs, ys_labels, xt, pt, s2):
    c = pt.shape[1]
    total, valid = 0.0, 0
    for k in range(c):
        ws = np.array([1.0 if l == k else 0.0 for l in ys_labels])
        wt = pt[:, k].copy()
        if ws.sum() == 0 or wt.sum() == 0:
            continue
        ws /= ws.sum()
        wt /= wt.sum()
        valid += 1
        total += ws @ rbf(xs, xs, s2) @ ws + wt @ rbf(xt, xt, s2) @ wt - 2 * ws @ rbf(xs, xt, s2) @ wt
    return total / valid


def cdd(xs, ls, xt, lt, classes, s2):
    def sub(x, labels, k):
        return x[[i for i, l in enumerate(labels) if l == k]]

    intra, inter = [], []
    for c in range(classes):
        for d in range(classes):
            a, b = sub(xs, ls, c), sub(xt, lt, d)
            if len(a) == 0 or len(b) == 0:
                continue
            (intra if c == d else inter).append(mmd(a, b, s2))
    return np.mean(intra) - np.mean(inter)


def derive_seed(root, tag):
    mask = (1 << 64) - 1
    h = 0xCBF29CE484222325
    for ch in tag.encode():
        h ^= ch
        h = (h * 0x100000001B3) & mask
    z = (root + 0x9E3779B97F4A7C15 + h) & mask
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
    return z ^ (z >> 31)


def kalman_rts(y, q, r):
    n = len(y)
    xf, pf = np.zeros(n), np.zeros(n)
    x, p = y[0], r
    xf[0], pf[0] = x, p
    for t in range(1, n):
        xp, pp = x, p + q
        k = pp / (pp + r)
        x = xp + k * (y[t] - xp)
        p = (1 - k) * pp
        xf[t], pf[t] = x, p
    xs = xf.copy()
    for t in range(n - 2, -1, -1):
        g = pf[t] / (pf[t] + q)
        xs[t] = xf[t] + g * (xs[t + 1] - xf[t])
    return xs


def main():
    np.set_printoptions(precision=17)
    s2 = [s * s for s in SIGMAS]
    print("rbf_fixed", repr(rbf(A, B, s2).tolist()))
    med = median_sq(A, B)
    print("median_sqdist", repr(med))
    print("mmd_fixed", repr(float(mmd(A, B, s2))))
    print("mmd_median", repr(float(mmd(A, B, [m * med for m in MULTS]))))
    print("mmd_linear", repr(float(np.sum((A.mean(0) - B.mean(0)) ** 2))))
    pt = np.array([[0.7, 0.3], [0.2, 0.8]])
    print("lmmd_fixed", repr(float(lmmd(A, [0, 1, 0], B, pt, s2))))
    print("cdd_fixed", repr(float(cdd(A, [0, 1, 0], B, [1, 0], 2, s2))))

    probs = np.array([[0.9, 0.05, 0.05], [0.8, 0.1, 0.1], [0.1, 0.2, 0.7]])
    phi = probs @ probs.T
    mu = np.zeros_like(phi)
    mask = np.zeros_like(phi)
    for i in range(3):
        for j in range(3):
            if i == j or phi[i, j] > 0.7:
                mu[i, j], mask[i, j] = 1, 1
            elif phi[i, j] < 0.2:
                mask[i, j] = 1
    bce = -(mu * np.log(phi) + (1 - mu) * np.log(1 - phi))
    print("phi", repr(phi.tolist()))
    print("loss_pair_upper07_lower02", repr(float((mask * bce).sum() / 9)))

    ps, ptg = np.array([0.9, 0.6]), np.array([0.2, 0.7])
    print("loss_disc", repr(float(-(np.log(ps).sum() + np.log(1 - ptg).sum()))))
    pa = np.array([[0.6, 0.3, 0.1], [0.2, 0.2, 0.6]])
    pr = np.array([[0.5, 0.4, 0.1], [0.3, 0.1, 0.6]])
    print("classifier_discrepancy", repr(float(np.abs(pa - pr).mean())))
    print("cross_entropy", repr(float(-(math.log(0.6) + math.log(0.6)) / 2)))

    print("de_variance_2", repr(0.5 * math.log(2 * math.pi * math.e * 2.0)))
    for root, tag in [(0, ""), (0, "init"), (42, "batches-source"), (7, "label-noise")]:
        print("derive_seed", root, repr(tag), derive_seed(root, tag))
    y = np.array([1.0, 2.0, 0.0, 3.0, 2.5])
    print("lds_q1e-3_r1e-2", repr(kalman_rts(y, 1e-3, 1e-2).tolist()))
    print("lds_q1_r1", repr(kalman_rts(y, 1.0, 1.0).tolist()))


if __name__ == "__main__":
    main()
