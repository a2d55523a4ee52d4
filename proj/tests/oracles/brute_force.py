"""Independent dense reference values for the C++ tests.

Builds U = R (2 N^* N - I) explicitly with numpy, simulates the walk, and
diagonalises H with numpy.linalg.eigh. Prints the values frozen in tests.
"""
import math

import numpy as np


def hypercube_weights(d, m):
    n = 1 << d
    w = np.zeros((n, n))
    for u in range(n):
        for j in range(d):
            v = u ^ (1 << j)
            w[u, v] = math.sqrt(m) if j == 0 else math.sqrt(2)
    return w


def arcs_of(w):
    n = w.shape[0]
    return [(a, b) for a in range(n) for b in range(n) if w[a, b] != 0]


def walk(w):
    arcs = arcs_of(w)
    idx = {arc: i for i, arc in enumerate(arcs)}
    n, m = w.shape[0], len(arcs)
    s = (w ** 2).sum(axis=1)
    nt = np.zeros((n, m))
    r = np.zeros((m, m))
    for i, (a, b) in enumerate(arcs):
        nt[a, i] = w[a, b] / math.sqrt(s[a])
        r[idx[(b, a)], i] = 1.0
    u = r @ (2 * nt.T @ nt - np.eye(m))
    return nt, r, u


def fidelity_sim(w, a, b, t_max):
    nt, _, u = walk(w)
    x, y = nt[a], nt[b]
    out = []
    for _ in range(t_max + 1):
        out.append(float(x @ y))
        x = u @ x
    return out


def classes(w, a, b):
    nt, r, _ = walk(w)
    h = nt @ r @ nt.T
    vals, vecs = np.linalg.eigh(h)
    groups = []
    for lam, v in zip(vals, vecs.T):
        if groups and abs(groups[-1][0] - lam) < 1e-8:
            groups[-1][1].append(v)
        else:
            groups.append([lam, [v]])
    return [(lam, sum(v[b] * v[a] for v in vs)) for lam, vs in groups]


def scan(w, a, b, horizon):
    cls = classes(w, a, b)
    # acos is ill-conditioned at +-1: a rounding error of 1e-16 in lambda moves
    # theta by 1e-8, which matters at t ~ 1e7.
    theta = np.array([0.0 if lam > 1 - 1e-10 else math.pi if lam < -1 + 1e-10 else math.acos(lam)
                      for lam, _ in cls])
    ent = np.array([e for _, e in cls])
    best_t, best = 0, -1.0
    block = 1 << 20
    for t0 in range(0, horizon + 1, block):
        t = np.arange(t0, min(horizon + 1, t0 + block), dtype=np.float64)
        f = np.cos(np.outer(t, theta)) @ ent
        i = int(np.argmax(np.abs(f)))
        if abs(f[i]) > best + 1e-12:
            best, best_t = abs(f[i]), int(t[i])
    return best_t, best


if __name__ == "__main__":
    g4 = hypercube_weights(4, 2)
    print("Q4 grover antipodal f(t), t=0..12:", [round(v, 12) for v in fidelity_sim(g4, 0, 15, 12)])
    w41 = hypercube_weights(4, 1)
    print("Q4 W1 antipodal f(t), t=0..10:", [round(v, 12) for v in fidelity_sim(w41, 0, 15, 10)])
    print("Q4 W1 classes:", [(round(l * 7, 9), round(e * 16, 9)) for l, e in classes(w41, 0, 15)])
    for d, m, horizon in [(4, 1, 10**7), (6, 1, 10**7), (8, 3, 10**6)]:
        print(f"scan Q{d} m={m} horizon {horizon}:", scan(hypercube_weights(d, m), 0, (1 << d) - 1, horizon))
