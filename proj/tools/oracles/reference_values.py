#!/usr/bin/env python3
"""Reference-value generator for the exact-rational test suite.

Everything here is computed from first principles with exact fractions:
cells and vertices are enumerated geometrically (vertices are identified by
their exact rational coordinates, independently of the address algebra used
by the C++ library), graph Laplacians are assembled from the cell structure,
and all solves are exact Gaussian elimination over Q.

Run:  python3 tools/oracles/reference_values.py
The printed values are frozen into the C++ unit tests as expected constants.
"""

from fractions import Fraction as Fr
import itertools
import sys


# ---------------------------------------------------------------------------
# exact dense linear algebra
# ---------------------------------------------------------------------------

def solve(A, B):
    """Solve A X = B exactly (A: n x n, B: n x k). Returns X."""
    n = len(A)
    k = len(B[0])
    M = [list(map(Fr, A[i])) + list(map(Fr, B[i])) for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [x / pv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    return [row[n:] for row in M]


def inverse(A):
    n = len(A)
    I = [[Fr(int(i == j)) for j in range(n)] for i in range(n)]
    return solve(A, I)


def nullspace(A):
    """Exact nullspace basis of A (rows x cols)."""
    rows = len(A)
    cols = len(A[0])
    M = [list(map(Fr, r)) for r in A]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        pv = M[r][c]
        M[r] = [x / pv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fr(0)] * cols
        v[fc] = Fr(1)
        for i, pc in enumerate(pivots):
            v[pc] = -M[i][fc]
        basis.append(v)
    return basis


def solve_unique_overdetermined(A, b):
    """Solve A x = b (possibly overdetermined); require consistency and a
    unique solution, else raise."""
    rows = len(A)
    cols = len(A[0])
    M = [list(map(Fr, A[i])) + [Fr(b[i])] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        pv = M[r][c]
        M[r] = [x / pv for x in M[r]]
        for i in range(rows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * bb for a, bb in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    if len(pivots) != cols:
        raise ValueError("system does not determine a unique solution")
    for i in range(r, rows):
        if M[i][cols] != 0:
            raise ValueError("inconsistent system")
    x = [Fr(0)] * cols
    for i, pc in enumerate(pivots):
        x[pc] = M[i][cols]
    return x


# ---------------------------------------------------------------------------
# models: self-similar cell structure with exact rational coordinates
# ---------------------------------------------------------------------------

class Model:
    """n_maps similarities F_i(x) = scale*x + trans[i] acting on Q^dim,
    boundary corners q[0..n_bnd-1], renormalizers r[i], measure weights mu[i],
    boundary conductances cond[(j,k)]."""

    def __init__(self, name, nbnd, r, mu, cond, scale, trans, q):
        self.name = name
        self.nmaps = len(trans)
        self.nbnd = nbnd
        self.r = r
        self.mu = mu
        self.cond = cond
        self.scale = scale
        self.trans = trans
        self.q = q

    def apply(self, i, x):
        return tuple(self.scale[i] * xc + tc for xc, tc in zip(x, self.trans[i]))

    def corner(self, word, n):
        x = self.q[n]
        for i in reversed(word):
            x = self.apply(i, x)
        return x

    def rw(self, word):
        p = Fr(1)
        for i in word:
            p *= self.r[i]
        return p

    def muw(self, word):
        p = Fr(1)
        for i in word:
            p *= self.mu[i]
        return p


def model_interval():
    q = [(Fr(0),), (Fr(1),)]
    return Model("interval", 2, [Fr(1, 2)] * 2, [Fr(1, 2)] * 2, {(0, 1): Fr(1)},
                 [Fr(1, 2)] * 2, [(Fr(0),), (Fr(1, 2),)], q)


def model_nhedron(n):
    """n pairwise-touching cells, ratio 1/2, corners = unit basis of Q^n."""
    q = [tuple(Fr(int(i == j)) for j in range(n)) for i in range(n)]
    cond = {(j, k): Fr(1) for j in range(n) for k in range(j + 1, n)}
    r = [Fr(n, n + 2)] * n
    mu = [Fr(1, n)] * n
    trans = [tuple(c / 2 for c in q[i]) for i in range(n)]
    return Model(f"nhedron:{n}", n, r, mu, cond, [Fr(1, 2)] * n, trans, q)


def model_sg():
    m = model_nhedron(3)
    m.name = "sg"
    return m


def model_st():
    m = model_nhedron(4)
    m.name = "st"
    return m


def model_sg3():
    q = [(Fr(0), Fr(0)), (Fr(1), Fr(0)), (Fr(0), Fr(1))]
    cond = {(0, 1): Fr(1), (0, 2): Fr(1), (1, 2): Fr(1)}
    third = Fr(1, 3)
    trans = [
        (Fr(0), Fr(0)),          # corner cell at q0
        (Fr(2, 3), Fr(0)),       # corner cell at q1
        (Fr(0), Fr(2, 3)),       # corner cell at q2
        (Fr(1, 3), Fr(0)),       # side cell between q0,q1
        (Fr(0), Fr(1, 3)),       # side cell between q0,q2
        (Fr(1, 3), Fr(1, 3)),    # side cell between q1,q2
    ]
    return Model("sg3", 3, [Fr(7, 15)] * 6, [Fr(1, 6)] * 6, cond,
                 [third] * 6, trans, q)


# ---------------------------------------------------------------------------
# vertex / graph enumeration
# ---------------------------------------------------------------------------

def enumerate_level(M, m):
    """Return (coords list, index map coord->id, cells list of
    (word, [vertex ids per corner]))."""
    idx = {}
    coords = []
    cells = []
    for word in itertools.product(range(M.nmaps), repeat=m):
        vids = []
        for n in range(M.nbnd):
            c = M.corner(word, n)
            if c not in idx:
                idx[c] = len(coords)
                coords.append(c)
            vids.append(idx[c])
        cells.append((word, vids))
    return coords, idx, cells


def graph_conductances(M, cells):
    """Accumulated edge conductances of the level-m graph."""
    c = {}
    for word, vids in cells:
        rw = M.rw(word)
        for (j, k), cjk in M.cond.items():
            a, b = vids[j], vids[k]
            key = (min(a, b), max(a, b))
            c[key] = c.get(key, Fr(0)) + cjk / rw
    return c


def eta_counts(M, cells, nverts):
    eta = [0] * nverts
    for _, vids in cells:
        for v in set(vids):
            eta[v] += 1
    return eta


# ---------------------------------------------------------------------------
# harmonic structure
# ---------------------------------------------------------------------------

def harmonic_values_level1(M):
    """h_k on the level-1 graph: returns (coords, idx, cells, H) with
    H[vid][k] = h_k(vertex)."""
    coords, idx, cells, = enumerate_level(M, 1)
    cond = graph_conductances(M, cells)
    bnd = [idx[M.q[k]] for k in range(M.nbnd)]
    free = [v for v in range(len(coords)) if v not in bnd]
    H = [[Fr(0)] * M.nbnd for _ in range(len(coords))]
    for k, b in enumerate(bnd):
        H[b][k] = Fr(1)
    if free:
        A = [[Fr(0)] * len(free) for _ in free]
        B = [[Fr(0)] * M.nbnd for _ in free]
        fpos = {v: i for i, v in enumerate(free)}
        for (a, b), cv in cond.items():
            for u, w in ((a, b), (b, a)):
                if u in fpos:
                    A[fpos[u]][fpos[u]] += cv
                    if w in fpos:
                        A[fpos[u]][fpos[w]] -= cv
                    else:
                        for k in range(M.nbnd):
                            B[fpos[u]][k] += cv * H[w][k]
        X = solve(A, B)
        for v, i in fpos.items():
            H[v] = X[i]
    return coords, idx, cells, H


def extension_matrices(M):
    """B[i][n][k] = h_k(F_i q_n)."""
    coords, idx, cells, H = harmonic_values_level1(M)
    B = []
    for i in range(M.nmaps):
        B.append([H[idx[M.corner((i,), n)]] for n in range(M.nbnd)])
    return B


def iota(M, B):
    """iota_n = integral of h_n: fixed point of the averaging operator,
    normalized to sum 1."""
    N = M.nbnd
    A = [[Fr(0)] * N for _ in range(N)]
    for i in range(M.nmaps):
        for n in range(N):
            for k in range(N):
                A[n][k] += M.mu[i] * B[i][k][n]
    sysA = [[A[n][k] - Fr(int(n == k)) for k in range(N)] for n in range(N)]
    basis = nullspace(sysA)
    assert len(basis) == 1, f"iota nullspace dim {len(basis)}"
    v = basis[0]
    s = sum(v)
    return [x / s for x in v]


def gram_I(M, B):
    """I[k][kp] = integral of h_k h_kp d mu via the pair averaging operator."""
    N = M.nbnd
    dim = N * N
    A = [[Fr(0)] * dim for _ in range(dim)]
    for i in range(M.nmaps):
        for k in range(N):
            for kp in range(N):
                for n in range(N):
                    for npp in range(N):
                        A[k * N + kp][n * N + npp] += M.mu[i] * B[i][n][k] * B[i][npp][kp]
    sysA = [[A[a][b] - Fr(int(a == b)) for b in range(dim)] for a in range(dim)]
    basis = nullspace(sysA)
    assert len(basis) == 1, f"I nullspace dim {len(basis)}"
    v = basis[0]
    s = sum(v)
    v = [x / s for x in v]
    return [[v[k * N + kp] for kp in range(N)] for k in range(N)]


def level1_interior(M):
    coords, idx, cells, H = harmonic_values_level1(M)
    bnd = {idx[M.q[k]] for k in range(M.nbnd)}
    interior = [v for v in range(len(coords)) if v not in bnd]
    return coords, idx, cells, H, interior


def X_G_b(M, B, I, iot):
    """Level-1 interior Laplacian X, its inverse G, the tent masses
    b[p] = integral of the level-1 tent at p, and b_k[p] = integral of
    h_k * tent_p."""
    coords, idx, cells, H, interior = level1_interior(M)
    cond = graph_conductances(M, cells)
    pos = {v: i for i, v in enumerate(interior)}
    ni = len(interior)
    X = [[Fr(0)] * ni for _ in range(ni)]
    for (a, b), cv in cond.items():
        for u, w in ((a, b), (b, a)):
            if u in pos:
                X[pos[u]][pos[u]] += cv
                if w in pos:
                    X[pos[u]][pos[w]] -= cv
    G = inverse(X)
    # representations of each interior vertex
    reps = {v: [] for v in interior}
    for (word, vids) in cells:
        i = word[0]
        for n, v in enumerate(vids):
            if v in pos:
                reps[v].append((i, n))
    bvec = [Fr(0)] * ni
    bk = [[Fr(0)] * ni for _ in range(M.nbnd)]
    for v in interior:
        for (i, n) in reps[v]:
            bvec[pos[v]] += M.mu[i] * iot[n]
            for k in range(M.nbnd):
                bk[k][pos[v]] += M.mu[i] * sum(B[i][kp][k] * I[kp][n]
                                               for kp in range(M.nbnd))
    return coords, idx, interior, pos, X, G, bvec, bk


def g1_values(M):
    """g1 on level-1 interior vertices, both construction paths."""
    B = extension_matrices(M)
    iot = iota(M, B)
    I = gram_I(M, B)
    coords, idx, interior, pos, X, G, bvec, bk = X_G_b(M, B, I, iot)
    ni = len(interior)
    # path 1: g1 = G b
    g1 = [sum(G[i][j] * bvec[j] for j in range(ni)) for i in range(ni)]
    # path 2: g1 = -sum_k f1k, f1k = -G b_k
    f1 = [[-sum(G[i][j] * bk[k][j] for j in range(ni)) for i in range(ni)]
          for k in range(M.nbnd)]
    g1b = [-sum(f1[k][i] for k in range(M.nbnd)) for i in range(ni)]
    assert g1 == g1b, "g1 paths disagree"
    return B, iot, I, coords, idx, interior, pos, G, bvec, bk, g1, f1


def green_integral(M, g1, bvec):
    """integral of g_{V0} d mu: T / (1 - sum mu_i^2 r_i)."""
    T = sum(g1[i] * bvec[i] for i in range(len(g1)))
    rho = sum(M.mu[i] * M.mu[i] * M.r[i] for i in range(M.nmaps))
    return T / (1 - rho), T, rho


def g_on_level(M, m):
    """Exact values of g_{V0} on all level-m vertices via the two-scale
    recursion. Returns (coords, idx, cells, gmap coord->Fr)."""
    B, iot, I, coords1, idx1, interior, pos, G, bvec, bk, g1, f1 = g1_values(M)
    g1full = {}
    for n in range(M.nbnd):
        g1full[(n % M.nmaps, n)] = None  # placeholder, filled below
    val1 = {}
    for i in range(M.nmaps):
        for n in range(M.nbnd):
            c = M.corner((i,), n)
            v = idx1[c]
            val1[(i, n)] = g1[pos[v]] if v in pos else Fr(0)
    gm = {M.q[n]: Fr(0) for n in range(M.nbnd)}
    for (i, n), gv in val1.items():
        gm[M.corner((i,), n)] = gv
    level = 1
    while level < m:
        cells = list(itertools.product(range(M.nmaps), repeat=level))
        newg = dict(gm)
        for word in cells:
            corner_vals = [gm[M.corner(word, n)] for n in range(M.nbnd)]
            murw = M.muw(word) * M.rw(word)
            for j in range(M.nmaps):
                for n in range(M.nbnd):
                    c = M.corner(word + (j,), n)
                    v = sum(B[j][n][l] * corner_vals[l] for l in range(M.nbnd))
                    newg[c] = v + murw * val1[(j, n)]
        gm = newg
        level += 1
    coords, idx, cells = enumerate_level(M, m)
    return coords, idx, cells, gm, (B, iot, val1)


def tent_masses(M, cells, iot, nverts):
    """mass[p] = integral of the level-m tent at p."""
    mass = [Fr(0)] * nverts
    for word, vids in cells:
        muw = M.muw(word)
        for n, v in enumerate(vids):
            mass[v] += muw * iot[n]
    return mass


def spline_integral(M, cells, iot, values_by_vid):
    s = Fr(0)
    for word, vids in cells:
        muw = M.muw(word)
        for n, v in enumerate(vids):
            s += muw * iot[n] * values_by_vid[v]
    return s


def solve_loaded(M, m, E_coords, dirichlet, load_scale):
    """Solve the level-m system: u = dirichlet on E; at every other vertex
    (including free boundary corners: natural condition)
      sum_edges c (u_p - u_x) = load_scale * tentmass(p).
    Returns (coords, idx, cells, u list, iota)."""
    B = extension_matrices(M)
    iot = iota(M, B)
    coords, idx, cells = enumerate_level(M, m)
    cond = graph_conductances(M, cells)
    mass = tent_masses(M, cells, iot, len(coords))
    fixed = {}
    for c, val in zip(E_coords, dirichlet):
        fixed[idx[c]] = val
    free = [v for v in range(len(coords)) if v not in fixed]
    pos = {v: i for i, v in enumerate(free)}
    A = [[Fr(0)] * len(free) for _ in free]
    rhs = [[load_scale * mass[v]] for v in free]
    for (a, b), cv in cond.items():
        for u, w in ((a, b), (b, a)):
            if u in pos:
                A[pos[u]][pos[u]] += cv
                if w in pos:
                    A[pos[u]][pos[w]] -= cv
                else:
                    rhs[pos[u]][0] += cv * fixed[w]
    sol = solve(A, rhs) if free else []
    u = [Fr(0)] * len(coords)
    for v, val in fixed.items():
        u[v] = val
    for v, i in pos.items():
        u[v] = sol[i][0]
    return coords, idx, cells, u, iot


def delta0_sq(M, m, E_coords):
    """delta0(E)^2 = integral of the Green-type function vanishing on E
    (natural condition at free boundary corners), computed exactly at
    enclosing level m."""
    coords, idx, cells, u, iot = solve_loaded(M, m, E_coords,
                                              [Fr(0)] * len(E_coords), Fr(1))
    t = g1_values(M)
    Ig, T, rho = green_integral(M, t[10], t[8])
    return spline_integral(M, cells, iot, u) + (rho ** m) * Ig


def natural_weights(M, m, E_coords):
    """p(x) = integral of the cardinal spline at x on E (level-m exact)."""
    ws = []
    for i in range(len(E_coords)):
        d = [Fr(int(j == i)) for j in range(len(E_coords))]
        coords, idx, cells, u, iot = solve_loaded(M, m, E_coords, d, Fr(0))
        ws.append(spline_integral(M, cells, iot, u))
    return ws


def effective_resistance_radius(M, m):
    """min over x0 in V_m of max over x in V_m of pairwise effective
    resistance on the level-m graph."""
    coords, idx, cells = enumerate_level(M, m)
    cond = graph_conductances(M, cells)
    n = len(coords)
    L = [[Fr(0)] * n for _ in range(n)]
    for (a, b), cv in cond.items():
        L[a][a] += cv
        L[b][b] += cv
        L[a][b] -= cv
        L[b][a] -= cv
    # ground vertex 0
    Li = inverse([row[1:] for row in L[1:]])

    def reff(a, b):
        va = Li[a - 1][a - 1] if a > 0 else Fr(0)
        vb = Li[b - 1][b - 1] if b > 0 else Fr(0)
        vab = Li[a - 1][b - 1] if (a > 0 and b > 0) else Fr(0)
        return va + vb - 2 * vab

    best = None
    for x0 in range(n):
        worst = max(reff(x0, x) for x in range(n) if x != x0)
        if best is None or worst < best:
            best = worst
    return best


# ---------------------------------------------------------------------------
# energy-measure tables
# ---------------------------------------------------------------------------

def pairs(N):
    return [(j, k) for j in range(N) for k in range(j + 1, N)]


def decompose_pair(a, b, N):
    """nu_{a,b} = sum_{j<k} c_jk nu_{jk} for harmonic a = sum a_l h_l."""
    c = {}
    for (j, k) in pairs(N):
        c[(j, k)] = a[j] * b[k] + a[k] * b[j] - a[j] * b[j] - a[k] * b[k]
    return c


def m_matrices(M, B):
    """M_i in the pair basis: nu_{jk}(F_i A) = sum_(lm) Mi[(jk)][(lm)] nu_lm(A)."""
    N = M.nbnd
    P = pairs(N)
    out = []
    for i in range(M.nmaps):
        rows = []
        for (j, k) in P:
            a = [B[i][l][j] for l in range(N)]  # h_j o F_i in the h basis
            b = [B[i][l][k] for l in range(N)]
            c = decompose_pair(a, b, N)
            rows.append([c[p] / M.r[i] for p in P])
        out.append(rows)
    return out


def e0(M, u, v):
    s = Fr(0)
    for (j, k), cv in M.cond.items():
        s += cv * (u[j] - u[k]) * (v[j] - v[k])
    return s


def pair_masses(M):
    N = M.nbnd
    ms = []
    for (j, k) in pairs(N):
        hj = [Fr(int(l == j)) for l in range(N)]
        hk = [Fr(int(l == k)) for l in range(N)]
        ms.append(e0(M, hj, hk))
    return ms


def basic_integrals(M):
    """X[n][(jk)] = integral of h_n d nu_{jk}: unique solution of the
    self-similar fixed point plus mass normalization."""
    N = M.nbnd
    P = pairs(N)
    B = extension_matrices(M)
    Ms = m_matrices(M, B)
    dim = N * len(P)

    def col(n, pi):
        return n * len(P) + pi

    A = []
    rhs = []
    for n in range(N):
        for pi in range(len(P)):
            row = [Fr(0)] * dim
            row[col(n, pi)] += Fr(1)
            for i in range(M.nmaps):
                for qi in range(len(P)):
                    for l in range(N):
                        row[col(l, qi)] -= Ms[i][pi][qi] * B[i][l][n]
            A.append(row)
            rhs.append(Fr(0))
    masses = pair_masses(M)
    for pi in range(len(P)):
        row = [Fr(0)] * dim
        for n in range(N):
            row[col(n, pi)] = Fr(1)
        A.append(row)
        rhs.append(masses[pi])
    x = solve_unique_overdetermined(A, rhs)
    return [[x[col(n, pi)] for pi in range(len(P))] for n in range(N)], masses, Ms


def mat_vec(A, v):
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def mat_mul(A, B):
    return [[sum(A[i][k] * B[k][j] for k in range(len(B)))
             for j in range(len(B[0]))] for i in range(len(A))]


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------

def fmt(x):
    if isinstance(x, Fr):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    return repr(x)


def header(s):
    print()
    print("=" * 72)
    print(s)
    print("=" * 72)


def report_model_core(M, mlevels=(1, 2)):
    header(f"model {M.name}")
    B, iot, I, coords1, idx1, interior, pos, G, bvec, bk, g1, f1 = g1_values(M)
    Ig, T, rho = green_integral(M, g1, bvec)
    print("extension matrices B[i][n][k]:")
    for i in range(M.nmaps):
        print(f"  i={i}: " + " ; ".join(",".join(fmt(x) for x in row) for row in B[i]))
    print("iota:", [fmt(x) for x in iot])
    print("I[k][kp]:")
    for row in I:
        print("   ", [fmt(x) for x in row])
    print("interior vertices:", [coords1[v] for v in interior])
    print("X diag/offdiag via G^-1 not printed; G:")
    for row in G:
        print("   ", [fmt(x) for x in row])
    print("tent masses b:", [fmt(x) for x in bvec])
    for k in range(M.nbnd):
        print(f"f1{k} on interior:", [fmt(x) for x in f1[k]])
    print("g1 on interior:", [fmt(x) for x in g1])
    print("T:", fmt(T), " rho:", fmt(rho), " integral g_V0:", fmt(Ig))
    print("delta0^2(V0) =", fmt(Ig))
    for m in mlevels:
        coords, idx, cells = enumerate_level(M, m)
        eta = eta_counts(M, cells, len(coords))
        from collections import Counter
        print(f"V_{m}: {len(coords)} vertices, eta counts {dict(Counter(eta))}")
    return B, iot, I, G, bvec, g1, Ig, rho


def main():
    # ----- SG ------------------------------------------------------------
    sg = model_sg()
    B, iot, I, G, bvec, g1, Ig, rho = report_model_core(sg)

    header("sg: g on V_m, sup, delta1 data")
    for m in (1, 2, 3):
        coords, idx, cells, gm, _ = g_on_level(sg, m)
        vals = sorted(set(gm[c] for c in coords)) if False else None
        mx = max(gm[c] for c in coords)
        print(f"max g over V_{m}: {fmt(mx)}")
    # delta0^2 for the section-3 sample sets
    V0 = [sg.q[n] for n in range(3)]
    mid = lambda a, b: tuple((x + y) / 2 for x, y in zip(a, b))
    m01, m02, m12 = mid(V0[0], V0[1]), mid(V0[0], V0[2]), mid(V0[1], V0[2])
    E32 = V0 + [m01]
    E33 = V0 + [m01, m02]
    V1 = V0 + [m01, m02, m12]
    E36 = [m01, m02, m12]
    for name, E, m in (("V0", V0, 2), ("V0+{m01}", E32, 2),
                       ("V0+{m01,m02}", E33, 2), ("V1", V1, 2),
                       ("midpoints-only", E36, 2)):
        d = delta0_sq(sg, m, E)
        print(f"delta0^2({name}) = {fmt(d)}")
    coords2, idx2, cells2 = enumerate_level(sg, 2)
    V2 = list(coords2)
    print("delta0^2(V2) =", fmt(delta0_sq(sg, 3, V2)))

    header("sg: natural weights")
    for name, E, m in (("V0", V0, 1), ("V0+{m01}", E32, 1),
                       ("V0+{m01,m02}", E33, 1), ("V1", V1, 1),
                       ("midpoints-only", E36, 1)):
        ws = natural_weights(sg, m, E)
        print(f"p({name}) = {[fmt(w) for w in ws]}  sum={fmt(sum(ws))}")

    header("sg: uniform-vs-natural discrepancy coefficients on V_m")
    for m in range(0, 5):
        coords, idx, cells = enumerate_level(sg, m)
        eta = eta_counts(sg, cells, len(coords))
        tot = Fr(3 ** m)
        p = [Fr(e, 1) / (3 * tot) for e in eta]
        w = Fr(1, len(coords))
        s = sum(abs(pp - w) for pp in p)
        print(f"m={m}: #V={len(coords)} sum|p-w| = {fmt(s)}")

    header("sg: resistance radius (min-max pairwise) on V_m")
    for m in (1, 2, 3):
        print(f"m={m}: R = {fmt(effective_resistance_radius(sg, m))}")
    header("interval: resistance radius on V_m")
    iv = model_interval()
    for m in (1, 2, 3, 4):
        print(f"m={m}: R = {fmt(effective_resistance_radius(iv, m))}")

    header("sg: I vs refinement quadrature (float) at depths 7 and 12")
    import numpy as np
    Bf = [np.array([[float(x) for x in row] for row in B[i]]) for i in range(3)]
    D = np.diag([float(x) for x in iot])
    Mcur = D.copy()
    for d in range(1, 13):
        Mcur = sum(float(sg.mu[i]) * Bf[i].T @ Mcur @ Bf[i] for i in range(3))
        if d in (7, 12):
            Ifl = np.array([[float(x) for x in row] for row in I])
            print(f"d={d}: max|refine - I| = {np.abs(Mcur - Ifl).max():.3e}")

    # ----- interval -------------------------------------------------------
    report_model_core(iv)
    header("interval: delta0^2 checks")
    print("delta0^2(V0) expect 1/12 - ? ->", fmt(delta0_sq(iv, 2, [iv.q[0], iv.q[1]])))
    coords, idx, cells = enumerate_level(iv, 1)
    print("delta0^2(V1) ->", fmt(delta0_sq(iv, 2, list(coords))))

    # ----- ST -------------------------------------------------------------
    st = model_st()
    report_model_core(st, mlevels=(1,))
    header("st: g data and coefficients")
    for m in (1, 2):
        coords, idx, cells, gm, _ = g_on_level(st, m)
        print(f"max g over V_{m}: {fmt(max(gm[c] for c in coords))}")
    for m in range(0, 5):
        coords, idx, cells = enumerate_level(st, m)
        eta = eta_counts(st, cells, len(coords))
        tot = Fr(4 ** m)
        p = [Fr(e, 1) / (4 * tot) for e in eta]
        w = Fr(1, len(coords))
        s = sum(abs(pp - w) for pp in p)
        print(f"m={m}: #V={len(coords)} sum|p-w| = {fmt(s)}  "
              f"printed-form-candidates: 2(4^m-1)/(4^m(4^m+1))="
              f"{fmt(Fr(2*(4**m-1), 4**m*(4**m+1)))}")

    # ----- SG3 ------------------------------------------------------------
    sg3 = model_sg3()
    report_model_core(sg3, mlevels=(1, 2))
    header("sg3: g data")
    for m in (1, 2):
        coords, idx, cells, gm, _ = g_on_level(sg3, m)
        print(f"max g over V_{m}: {fmt(max(gm[c] for c in coords))}")
    # numeric sup via deep refinement (float), confirm fixed point 630/8051
    B3, iot3, I3, coords31, idx31, interior3, pos3, G3, bvec3, bk3, g13, f13 = g1_values(sg3)
    val1 = {}
    for i in range(sg3.nmaps):
        for n in range(sg3.nbnd):
            c = sg3.corner((i,), n)
            v = idx31[c]
            val1[(i, n)] = g13[pos3[v]] if v in pos3 else Fr(0)
    Bf = [[[float(x) for x in row] for row in B3[i]] for i in range(6)]
    v1f = {k: float(v) for k, v in val1.items()}
    import heapq
    # branch and bound with rigorous upper bound
    q = max(float(sg3.mu[i] * sg3.r[i]) for i in range(6))
    Ig3, T3, rho3 = green_integral(sg3, g13, bvec3)
    U = max(v1f.values()) / (1.0 - q)
    best = max(v1f.values())
    heap = []
    for i in range(6):
        corners = [v1f[(i, n)] for n in range(3)]
        ub = max(corners) + float(sg3.mu[i] * sg3.r[i]) * U
        heapq.heappush(heap, (-ub, corners, float(sg3.mu[i] * sg3.r[i])))
    it = 0
    while heap and it < 200000:
        negub, corners, murw = heapq.heappop(heap)
        if -negub <= best + 1e-15:
            break
        for j in range(6):
            child = [sum(Bf[j][n][l] * corners[l] for l in range(3))
                     + murw * v1f[(j, n)] for n in range(3)]
            best = max(best, max(child))
            cm = murw * float(sg3.mu[j] * sg3.r[j])
            ub = max(child) + cm * U
            if ub > best + 1e-15:
                heapq.heappush(heap, (-ub, child, cm))
        it += 1
    print(f"sg3 sup g (branch&bound, float): {best:.15f}; "
          f"candidate 630/8051 = {630/8051:.15f}")
    print("sg3 integral g:", fmt(Ig3), "=", float(Ig3))
    for m in range(0, 7):
        nab = 6 ** m
        nv = 3 + Fr(7, 5) * (nab - 1)
        k1, k2, k3 = 3, Fr(6, 5) * (nab - 1), Fr(1, 5) * (nab - 1)
        w = 1 / nv
        s = k1 * abs(Fr(1, 3 * nab) - w) + k2 * abs(Fr(2, 3 * nab) - w) \
            + k3 * abs(Fr(1, nab) - w)
        print(f"m={m}: #V={nv} sum|p-w| = {fmt(s)} = {float(s):.12f} "
              f"(|.-4/35|={abs(float(s) - 4/35):.3e})")

    # ----- energy measures ------------------------------------------------
    for M in (model_interval(), model_sg(), model_st(), model_sg3()):
        header(f"energy tables: {M.name}")
        X, masses, Ms = basic_integrals(M)
        P = pairs(M.nbnd)
        print("pair masses E(h_j,h_k):", [f"{p}:{fmt(v)}" for p, v in zip(P, masses)])
        for i in range(min(M.nmaps, 2)):
            print(f"M_{i}:")
            for row in Ms[i]:
                print("   ", [fmt(x) for x in row])
        print("basic integrals  int h_n d nu_jk:")
        for n in range(M.nbnd):
            print(f"  n={n}: ", [f"{p}:{fmt(v)}" for p, v in zip(P, X[n])])
        # refinement consistency: masses = sum_i M_i masses
        tot = [Fr(0)] * len(P)
        for i in range(M.nmaps):
            mv = mat_vec(Ms[i], masses)
            tot = [a + b for a, b in zip(tot, mv)]
        assert tot == masses, f"mass refinement consistency failed for {M.name}"
        print("mass refinement consistency: ok")
        # additivity of a sample cell integral for f = h_0 (+h_1 for fun)
        if M.name in ("sg", "interval"):
            for word in [(0,), (0, 1), (0, 1, 2 % M.nmaps)]:
                Mw = Ms[word[0]]
                for wi in word[1:]:
                    Mw = mat_mul(Mw, Ms[wi])
                cellmass = mat_vec(Mw, masses)
                # integral of h_0 over cell: sum_n h0-in-local-basis
                Bm = extension_matrices(M)
                loc = [Fr(int(l == 0)) for l in range(M.nbnd)]
                for wi in word:
                    loc = mat_vec([[Bm[wi][l][n] for n in range(M.nbnd)]
                                   for l in range(M.nbnd)], loc)
                #  f|cell = sum_n loc[n] h_n  ->  integral = sum_n loc[n] X[n][.] via Mw
                intvals = []
                for pi in range(len(P)):
                    s = Fr(0)
                    for qi in range(len(P)):
                        for n in range(M.nbnd):
                            s += Mw[pi][qi] * loc[n] * X[n][qi]
                    intvals.append(s)
                print(f"cell {word}: nu-masses {[fmt(x) for x in cellmass]}; "
                      f"int h0 dnu {[fmt(x) for x in intvals]}")

    # nhedron harmonic-value pattern
    header("nhedron harmonic extension pattern")
    for n in (2, 3, 4, 5, 6):
        M = model_nhedron(n)
        B = extension_matrices(M)
        vals = set()
        for i in range(n):
            for nn in range(n):
                for k in range(n):
                    vals.add(((n + 2) * B[i][nn][k]).limit_denominator() if False
                             else (n + 2) * B[i][nn][k])
        print(f"n={n}: (n+2)*h_k(F_i q_n) values: "
              f"{sorted(set(fmt(v) for v in vals))}")
        iot = iota(M, B)
        print(f"   iota = {fmt(iot[0])} (uniform)")
        I = gram_I(M, B)
        print(f"   I diag = {fmt(I[0][0])}, offdiag = {fmt(I[0][1]) if n > 1 else '-'}")
        t = g1_values(M)
        print(f"   g1 = {fmt(t[10][0])} (uniform), "
              f"Ig = {fmt(green_integral(M, t[10], t[8])[0])}")


if __name__ == "__main__":
    main()
