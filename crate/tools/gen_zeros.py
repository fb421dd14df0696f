#!/usr/bin/env python3
"""Generate a table of ordinates of the first K non-trivial zeros of zeta.

The table is test data for the zeta_zeros module; the toolkit itself never
computes zeros. Method:

  * Z(t) = exp(i theta(t)) zeta(1/2 + it) by the Riemann-Siegel main sum
    with its first correction term for t >= 300, and by Euler-Maclaurin
    summation (N ~ t/pi terms, 16 Bernoulli correction terms) below that
    and wherever |Z| is too small to trust its sign. Vectorised over
    batches of t with numpy.
  * Gram points g_n (theta(g_n) = n pi). Consecutive "good" Gram points
    ((-1)^n Z(g_n) > 0) bound Gram blocks; a block of k Gram intervals
    must contain exactly k zeros (Rosser's rule, which holds far beyond
    the heights produced here). Blocks are subdivided until all k sign
    changes are found, so no zero is skipped.
  * Every bracket is refined by the Illinois variant of regula falsi on a
    Riemann-Siegel approximation, polished by two Newton steps on the
    Euler-Maclaurin value, and accepted only if Euler-Maclaurin shows a
    sign change within +-1e-9 inside the bracket.

Usage: gen_zeros.py COUNT OUT [--check N]
    --check N compares N evenly spaced zeros against mpmath.zetazero.
"""

import argparse
import math
import sys

import numpy as np

M_TERMS = 16


def bernoulli_even(m):
    import mpmath

    return [float(mpmath.bernoulli(2 * k)) for k in range(1, m + 1)]


B2K = None


def theta(t):
    t = np.asarray(t, dtype=np.float64)
    return (
        t / 2.0 * np.log(t / (2.0 * math.pi))
        - t / 2.0
        - math.pi / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t**3)
        + 31.0 / (80640.0 * t**5)
        + 127.0 / (430080.0 * t**7)
    )


RS_FROM = 300.0


def z_values(ts):
    """Hardy Z: Riemann-Siegel (first correction term) above RS_FROM, with an
    Euler-Maclaurin re-evaluation wherever the value is too small to trust
    its sign; Euler-Maclaurin below RS_FROM."""
    ts = np.asarray(ts, dtype=np.float64)
    out = np.empty_like(ts)
    hi = ts >= RS_FROM
    out[hi] = z_rs(ts[hi])
    redo = (~hi) | (np.abs(out) < 2e-2)
    if np.any(redo):
        out[redo] = z_em(ts[redo])
    return out


def z_rs(t):
    out = np.empty_like(t)
    batch = 4096
    for start in range(0, len(t), batch):
        tt = t[start : start + batch]
        a = np.sqrt(tt / (2.0 * math.pi))
        n_main = np.floor(a).astype(np.int64)
        p = a - n_main
        th = theta(tt)
        kmax = int(n_main.max())
        k = np.arange(1, kmax + 1, dtype=np.float64)
        terms = np.cos(th[:, None] - np.outer(tt, np.log(k))) / np.sqrt(k)
        terms[k[None, :] > n_main[:, None]] = 0.0
        main = 2.0 * terms.sum(axis=1)
        cp = np.cos(2.0 * math.pi * p)
        pp = np.where(np.abs(cp) < 1e-6, p + 1e-6, p)
        c0 = np.cos(2.0 * math.pi * (pp * pp - pp - 1.0 / 16.0)) / np.cos(2.0 * math.pi * pp)
        sign = np.where(n_main % 2 == 1, 1.0, -1.0)
        out[start : start + batch] = main + sign * c0 / np.sqrt(a)
    return out


def z_em(ts):
    """Hardy Z by Euler-Maclaurin, accurate to ~1e-12."""
    ts = np.asarray(ts, dtype=np.float64)
    out = np.empty_like(ts)
    order = np.argsort(ts)
    batch = 256
    for start in range(0, len(ts), batch):
        idx = order[start : start + batch]
        out[idx] = _z_batch(ts[idx])
    return out


def _z_batch(t):
    n_terms = int(max(t.max() / math.pi, 20.0)) + 10
    s = 0.5 + 1j * t
    acc = np.zeros(len(t), dtype=np.complex128)
    chunk = 4096
    for lo in range(1, n_terms, chunk):
        n = np.arange(lo, min(lo + chunk, n_terms), dtype=np.float64)
        logn = np.log(n)
        phase = -np.outer(t, logn)
        acc += (np.exp(1j * phase) / np.sqrt(n)).sum(axis=1)
    big_n = float(n_terms)
    log_big_n = math.log(big_n)
    n_pow_minus_s = np.exp(-s * log_big_n)
    acc += big_n * n_pow_minus_s / (s - 1.0) + n_pow_minus_s / 2.0
    # sum_k B_2k/(2k)! N^{1-s-2k} prod_{j=0}^{2k-2} (s+j)
    poch = s.copy()
    npow = n_pow_minus_s / big_n  # N^{-s-1}
    fact = 2.0
    for k in range(1, M_TERMS + 1):
        acc += B2K[k - 1] / fact * poch * npow
        poch = poch * (s + 2 * k - 1) * (s + 2 * k)
        npow = npow / (big_n * big_n)
        fact *= (2 * k + 1) * (2 * k + 2)
    return (np.exp(1j * theta(t)) * acc).real


def gram_points(n_max):
    ns = np.arange(-1, n_max + 1, dtype=np.float64)
    target = ns * math.pi
    # initial guess from leading asymptotics
    g = 2.0 * math.pi * np.exp(1.0 + np.real(_lambertw((ns + 1.0 / 8.0) / math.e)))
    for _ in range(50):
        f = theta(g) - target
        g_new = g - f / (0.5 * np.log(g / (2.0 * math.pi)))
        if np.max(np.abs(g_new - g)) < 1e-12 * np.max(g):
            g = g_new
            break
        g = g_new
    return ns.astype(np.int64), g


def _lambertw(x):
    from scipy.special import lambertw

    return lambertw(x)


def find_brackets(count):
    n_max = count + 64
    ns, g = gram_points(n_max)
    zg = z_values(g)
    good = ((-1.0) ** ns) * zg > 0
    good_idx = np.nonzero(good)[0]
    if good_idx[0] != 0:
        sys.exit("first Gram point g_-1 is not good")
    brackets = []
    for a, b in zip(good_idx[:-1], good_idx[1:]):
        need = b - a
        pts = g[a : b + 1]
        vals = zg[a : b + 1]
        level = 1
        while True:
            sc = np.nonzero(np.sign(vals[:-1]) != np.sign(vals[1:]))[0]
            if len(sc) == need:
                for i in sc:
                    brackets.append((pts[i], pts[i + 1], vals[i], vals[i + 1]))
                break
            if len(sc) > need or level > 12:
                sys.exit(
                    f"Gram block [{g[a]}, {g[b]}] (n={ns[a]}..{ns[b]}): "
                    f"found {len(sc)} sign changes, expected {need}"
                )
            mids = 0.5 * (pts[:-1] + pts[1:])
            mvals = z_values(mids)
            new_pts = np.empty(2 * len(pts) - 1)
            new_vals = np.empty_like(new_pts)
            new_pts[0::2], new_pts[1::2] = pts, mids
            new_vals[0::2], new_vals[1::2] = vals, mvals
            pts, vals = new_pts, new_vals
            level += 1
        if len(brackets) >= count:
            break
    return brackets[:count]


def illinois(a, b, fa, fb, zfun, tol):
    a, b, fa, fb = a.copy(), b.copy(), fa.copy(), fb.copy()
    side = np.zeros(len(a), dtype=np.int8)
    active = np.ones(len(a), dtype=bool)
    for _ in range(200):
        idx = np.nonzero(active)[0]
        if len(idx) == 0:
            break
        c = (a[idx] * fb[idx] - b[idx] * fa[idx]) / (fb[idx] - fa[idx])
        fc = zfun(c)
        same_a = np.sign(fc) == np.sign(fa[idx])
        ia = idx[same_a]
        a[ia], fa[ia] = c[same_a], fc[same_a]
        fb[ia[side[ia] == 1]] *= 0.5
        side[ia] = 1
        ib = idx[~same_a]
        b[ib], fb[ib] = c[~same_a], fc[~same_a]
        fa[ib[side[ib] == -1]] *= 0.5
        side[ib] = -1
        done = (b[idx] - a[idx] < tol * np.maximum(1.0, a[idx])) | (fc == 0.0)
        active[idx[done]] = False
    return 0.5 * (a + b)


def refine(brackets, eps=1e-9):
    a = np.array([b[0] for b in brackets])
    b = np.array([b[1] for b in brackets])
    fa = np.array([b[2] for b in brackets])
    fb = np.array([b[3] for b in brackets])
    r = illinois(a, b, fa, fb, z_cheap, 1e-10)
    # polish with Euler-Maclaurin values and a finite-difference slope
    for _ in range(2):
        h = 1e-5
        slope = (z_cheap(r + h) - z_cheap(r - h)) / (2.0 * h)
        r = r - z_em(r) / slope
    # accept only roots that stay in their own bracket and show an
    # Euler-Maclaurin sign change at +-eps; redo the rest with EM throughout
    lo, hi = z_em(r - eps), z_em(r + eps)
    bad = ~((r > a) & (r < b) & (np.sign(lo) != np.sign(hi)))
    if np.any(bad):
        print(f"{bad.sum()} zeros re-refined with Euler-Maclaurin", file=sys.stderr)
        fa2, fb2 = z_em(a[bad]), z_em(b[bad])
        r[bad] = illinois(a[bad], b[bad], fa2, fb2, z_em, 1e-14)
    return r


def z_cheap(t):
    t = np.asarray(t, dtype=np.float64)
    out = np.empty_like(t)
    hi = t >= RS_FROM
    out[hi] = z_rs(t[hi])
    out[~hi] = z_em(t[~hi])
    return out


def main():
    global B2K
    ap = argparse.ArgumentParser()
    ap.add_argument("count", type=int)
    ap.add_argument("out")
    ap.add_argument("--check", type=int, default=0)
    args = ap.parse_args()
    B2K = bernoulli_even(M_TERMS)
    brackets = find_brackets(args.count)
    zeros = refine(brackets)
    if np.any(np.diff(zeros) <= 0):
        sys.exit("zeros not strictly increasing")
    if args.check:
        import mpmath

        mpmath.mp.dps = 25
        worst = 0.0
        for k in np.unique(np.linspace(1, args.count, args.check).astype(int)):
            ref = float(mpmath.zetazero(int(k)).imag)
            worst = max(worst, abs(ref - zeros[k - 1]))
        print(f"max |error| vs mpmath over {args.check} samples: {worst:.3e}", file=sys.stderr)
    with open(args.out, "w") as fh:
        fh.write(f"# first {len(zeros)} positive ordinates of non-trivial zeros of zeta\n")
        fh.write("# generated by tools/gen_zeros.py (Riemann-Siegel + Euler-Maclaurin, Gram blocks)\n")
        fh.write("# precision 1e-9\n")
        for z in zeros:
            fh.write(f"{z:.10f}\n")


if __name__ == "__main__":
    main()
