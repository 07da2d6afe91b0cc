"""Independent high-precision derivations of the constants frozen in the C++ tests.

Run: python3 tests/oracles/derive_values.py
Nothing here imports the library; it works from the definitions directly.
"""
import itertools

import mpmath as mp

mp.mp.dps = 40


def plastic():
    return mp.findroot(lambda x: x**3 - x - 1, 1.3)


def perron(rows):
    return max(abs(v) for v in mp.eig(mp.matrix(rows))[0])


def parry(rows):
    a = mp.matrix(rows)
    n = a.rows
    vals, right = mp.eig(a)
    _, left = mp.eig(a.T)
    i = max(range(n), key=lambda j: abs(vals[j]))
    lam = mp.re(vals[i])
    y = [abs(mp.re(right[r, i])) for r in range(n)]
    j = max(range(n), key=lambda j: abs(mp.eig(a.T)[0][j]))
    x = [abs(mp.re(left[r, j])) for r in range(n)]
    s = sum(x[r] * y[r] for r in range(n))
    p = [x[r] * y[r] / s for r in range(n)]
    P = [[a[u, v] * y[v] / (lam * y[u]) for v in range(n)] for u in range(n)]
    return lam, p, P


def delta_for(eps, q=2, k=1):
    qk = mp.mpf(q) ** k
    f = lambda d: -d * mp.log(d, q) - (1 - d) * mp.log(1 - d, q) + d * mp.log(qk - 1, q) - eps
    return mp.findroot(f, (mp.mpf("1e-6"), (qk - 1) / qk - mp.mpf("1e-9")), solver="bisect")


def perrin(n):
    z = [3, 0, 2]
    while len(z) <= n:
        z.append(z[-2] + z[-3])
    return z[n]


def appendix_g3():
    # 3-words of the binary system avoiding 000, 111, 110, 011; u -> v when the
    # 6-word u v avoids them too (paths of length 3 between 3-word vertices).
    bad = {"000", "111", "110", "011"}
    ok = lambda w: all(w[i : i + 3] not in bad for i in range(len(w) - 2))
    verts = [w for w in ("".join(t) for t in itertools.product("01", repeat=3)) if ok(w)]
    return verts, [[1 if ok(u + v) else 0 for v in verts] for u in verts]


if __name__ == "__main__":
    rho = plastic()
    print("plastic", mp.nstr(rho, 21))
    print("log2 plastic", mp.nstr(mp.log(rho, 2), 18))
    verts, a = appendix_g3()
    lam, p, P = parry(a)
    print("G3 vertices", verts, "A", a, "lambda", mp.nstr(lam, 17))
    print("p", [mp.nstr(v, 17) for v in p])
    for row in P:
        print("P", [mp.nstr(v, 17) for v in row])
    print("delta(0.286)", mp.nstr(delta_for(mp.mpf("0.286")), 17))
    print("perrin", [perrin(n) for n in range(16)], perrin(40), perrin(60))
    print("marker q=3 k=1", mp.nstr(mp.log(2, 3) / 3, 17))
    print("marker q=3 k=2", mp.nstr(mp.log(2, 3) / 4, 17))
    print("q=6 recursive", mp.nstr(mp.log(4, 6) / 2 + mp.log(mp.mpf(17) / 16, 6) / 16, 17), mp.nstr(mp.log(2, 6), 17))
    print("q=8 truncated", mp.nstr(mp.log(1 + mp.sqrt(3), 8), 17))
    a8 = [[1 if (i % 3) * 3 <= j < (i % 3) * 3 + 3 else 0 for j in range(8)] for i in range(8)]
    print("q=8 perron", mp.nstr(perron(a8), 17))
