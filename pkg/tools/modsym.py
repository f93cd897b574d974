"""Weight-2 modular symbols for Gamma0(N), minus quotient.

Builds the space of Manin symbols over P^1(Z/N), quotients by the two-term,
three-term and star relations (imposing star = -1), and exposes:

  * an exact integer presentation matrix P with scalar denominator taking
    any symbol to coordinates on the free generators,
  * boundary functionals cutting out the cuspidal part,
  * Hecke operators T_n through Merel's matrices,
  * dimension formulas (genus, cusps, new-subspace) used as oracles.

The minus quotient has dimension genus + s where s counts star-swapped cusp
pairs; its cuspidal part has dimension exactly the genus and carries each
cuspidal Hecke eigensystem once.  Both dimensions are asserted against the
closed formulas on every build.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt

import numpy as np

# ---------------------------------------------------------------------------
# dimension formulas


def _mu_index(n: int) -> int:
    m = n
    for p in _prime_divisors(n):
        m = m // p * (p + 1)
    return m


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _kronecker_minus1(p: int) -> int:
    if p == 2:
        return 0
    return 1 if p % 4 == 1 else -1


def _kronecker_minus3(p: int) -> int:
    if p == 3:
        return 0
    if p == 2:
        return -1
    return 1 if p % 3 == 1 else -1


def nu2(n: int) -> int:
    if n % 4 == 0:
        return 0
    out = 1
    for p in _prime_divisors(n):
        out *= 1 + _kronecker_minus1(p)
    return out


def nu3(n: int) -> int:
    if n % 9 == 0:
        return 0
    out = 1
    for p in _prime_divisors(n):
        out *= 1 + _kronecker_minus3(p)
    return out


def num_cusps(n: int) -> int:
    total = 0
    for c in divisors(n):
        total += _phi(gcd(c, n // c))
    return total


def _phi(n: int) -> int:
    out = n
    for p in _prime_divisors(n):
        out = out // p * (p - 1)
    return out


def divisors(n: int) -> list[int]:
    out = [1]
    for p in _prime_divisors(n):
        k, q = 0, 1
        m = n
        while m % p == 0:
            m //= p
            k += 1
        out = [d * p**e for d in out for e in range(k + 1)]
    return sorted(out)


def genus(n: int) -> int:
    if n == 1:
        return 0
    g12 = 12 + _mu_index(n) - 3 * nu2(n) - 4 * nu3(n) - 6 * num_cusps(n)
    assert g12 % 12 == 0, n
    return g12 // 12


def _sigma0(n: int) -> int:
    out = 1
    for p in _prime_divisors(n):
        k, m = 0, n
        while m % p == 0:
            m //= p
            k += 1
        out *= k + 1
    return out


def _mobius_sq(n: int) -> int:
    """(mu * mu)(n): Dirichlet inverse of the divisor-count function."""
    out = 1
    for p in _prime_divisors(n):
        k, m = 0, n
        while m % p == 0:
            m //= p
            k += 1
        if k == 1:
            out *= -2
        elif k == 2:
            out *= 1
        else:
            return 0
    return out


def dim_new(n: int) -> int:
    """Dimension of the new subspace of weight-2 cusp forms on Gamma0(n)."""
    total = 0
    for m in divisors(n):
        c = _mobius_sq(n // m)
        if c:
            total += c * genus(m)
    return total


# ---------------------------------------------------------------------------
# P^1(Z/N)


class P1Table:
    """Canonical representatives of P^1(Z/N) with O(1) lookup."""

    def __init__(self, N: int) -> None:
        assert N >= 2
        self.N = N
        gtab = np.gcd(np.arange(N, dtype=np.int64), N)
        units = np.array([w for w in range(1, N) if gcd(w, N) == 1], dtype=np.int64)
        orbit_of = np.full(N * N, -1, dtype=np.int32)
        reps: list[tuple[int, int]] = []
        for c in range(N):
            gc = int(gtab[c])
            valid = np.nonzero(np.gcd(gc, gtab) == 1)[0]
            row = orbit_of[c * N : (c + 1) * N]
            for d in valid:
                d = int(d)
                if row[d] >= 0:
                    continue
                idx = len(reps)
                reps.append((c, d))
                uc = (units * c) % N
                ud = (units * d) % N
                orbit_of[uc * N + ud] = idx
        self.reps = reps
        self.orbit_of = orbit_of
        self.size = len(reps)

    def index(self, c: int, d: int) -> int:
        N = self.N
        return int(self.orbit_of[(c % N) * N + (d % N)])


# ---------------------------------------------------------------------------
# signed union-find for two-term relations


class _SignedUF:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))
        self.sign = [1] * n
        self.zero = [False] * n

    def find(self, i: int) -> tuple[int, int]:
        path = []
        while self.parent[i] != i:
            path.append(i)
            i = self.parent[i]
        root = i
        s = 1
        for j in reversed(path):
            s *= self.sign[j]
            self.parent[j] = root
            self.sign[j] = s
        return root, (self.sign[path[0]] if path else 1)

    def union(self, i: int, j: int, s: int) -> None:
        """Impose x_i = s * x_j."""
        ri, si = self.find(i)
        rj, sj = self.find(j)
        if ri == rj:
            if si != s * sj:
                self.zero[ri] = True
            return
        # x_ri = (s * sj / si) x_rj
        self.parent[ri] = rj
        self.sign[ri] = s * sj * si
        if self.zero[ri]:
            self.zero[rj] = True

    def resolve(self, i: int) -> tuple[int, int, bool]:
        r, s = self.find(i)
        return r, s, self.zero[r]


# ---------------------------------------------------------------------------
# sparse fraction-free elimination


def _eliminate(
    rows: list[dict[int, int]], variables: set[int]
) -> tuple[dict[int, dict[int, Fraction]], list[int]]:
    """Solve a sparse homogeneous integer system.

    Returns (solved, free) where solved maps an eliminated variable to its
    expression over free variables and free lists the rest of `variables`.
    """
    from heapq import heappush, heappop

    work = [dict(r) for r in rows if r]
    var_rows: dict[int, set[int]] = {}
    for k, r in enumerate(work):
        for v in r:
            var_rows.setdefault(v, set()).add(k)
    heap: list[tuple[int, int]] = []
    for k, r in enumerate(work):
        heappush(heap, (len(r), k))
    order: list[tuple[int, dict[int, int], int]] = []  # (pivot, row, pivot coeff)
    done = [False] * len(work)

    def strip(r: dict[int, int]) -> None:
        g = 0
        for c in r.values():
            g = gcd(g, abs(c))
        if g > 1:
            for v in list(r):
                r[v] //= g

    while heap:
        _, k = heappop(heap)
        if done[k]:
            continue
        row = work[k]
        if not row:
            done[k] = True
            continue
        done[k] = True
        # pivot: variable appearing in fewest other rows
        piv = min(row, key=lambda v: (len(var_rows.get(v, ())), v))
        pc = row[piv]
        for v in row:
            var_rows[v].discard(k)
        order.append((piv, dict(row), pc))
        touched = list(var_rows.get(piv, ()))
        for k2 in touched:
            if done[k2]:
                continue
            r2 = work[k2]
            c2 = r2.get(piv)
            if c2 is None:
                continue
            for v in r2:
                var_rows[v].discard(k2)
            # r2 <- pc*r2 - c2*row  (eliminates piv)
            for v in list(r2):
                r2[v] *= pc
            for v, c in row.items():
                nv = r2.get(v, 0) - c2 * c
                if nv:
                    r2[v] = nv
                else:
                    r2.pop(v, None)
            r2.pop(piv, None)
            strip(r2)
            for v in r2:
                var_rows.setdefault(v, set()).add(k2)
            if r2:
                heappush(heap, (len(r2), k2))

    eliminated = {piv for piv, _, _ in order}
    free = sorted(variables - eliminated)
    # back substitution in reverse elimination order
    solved: dict[int, dict[int, Fraction]] = {}
    for piv, row, pc in reversed(order):
        expr: dict[int, Fraction] = {}
        for v, c in row.items():
            if v == piv:
                continue
            coef = Fraction(-c, pc)
            if v in solved:
                for fv, fc in solved[v].items():
                    nv = expr.get(fv, Fraction(0)) + coef * fc
                    if nv:
                        expr[fv] = nv
                    else:
                        expr.pop(fv, None)
            else:
                nv = expr.get(v, Fraction(0)) + coef
                if nv:
                    expr[v] = nv
                else:
                    expr.pop(v, None)
        solved[piv] = expr
    return solved, free


# ---------------------------------------------------------------------------
# cusps


def _cusp_normalize(a: int, c: int) -> tuple[int, int]:
    g = gcd(a, c)
    if g:
        a, c = a // g, c // g
    if c < 0 or (c == 0 and a < 0):
        a, c = -a, -c
    if c == 0:
        a = 1
    return a, c


def _cusp_equiv(N: int, x: tuple[int, int], y: tuple[int, int]) -> bool:
    p1, q1 = x
    p2, q2 = y
    s1 = p1 if q1 == 0 else (pow(p1 % q1, -1, q1) if q1 > 1 else 0)
    s2 = p2 if q2 == 0 else (pow(p2 % q2, -1, q2) if q2 > 1 else 0)
    g = gcd(q1 * q2, N)
    return (s1 * q2 - s2 * q1) % g == 0


def all_cusps(N: int) -> list[tuple[int, int]]:
    """One representative per Gamma0(N)-class of cusps."""
    out = []
    for c in divisors(N):
        m = gcd(c, N // c)
        for a in range(1, m + 1):
            if gcd(a, m) != 1:
                continue
            a0 = a
            while gcd(a0, c) != 1:
                a0 += m
            out.append(_cusp_normalize(a0, c))
    assert len(out) == num_cusps(N)
    for i in range(len(out)):
        for j in range(i + 1, len(out)):
            assert not _cusp_equiv(N, out[i], out[j]), (N, out[i], out[j])
    return out


class CuspClasses:
    def __init__(self, N: int) -> None:
        self.N = N
        self.reps = all_cusps(N)

    def index(self, a: int, c: int) -> int:
        cusp = _cusp_normalize(a, c)
        for k, rep in enumerate(self.reps):
            if _cusp_equiv(self.N, cusp, rep):
                return k
        raise AssertionError(f"cusp {cusp} matched no class at level {self.N}")


def _lift_to_coprime(N: int, c: int, d: int) -> tuple[int, int]:
    """Lift a P^1(Z/N) representative to integers with gcd 1."""
    if c == 0 and d == 0:
        raise ValueError("not a projective point")
    if gcd(c, d) == 1:
        return c, d
    for k in range(1, 2 * N + 2):
        if gcd(c, d + k * N) == 1:
            return c, d + k * N
    raise AssertionError(f"no coprime lift for ({c}:{d}) mod {N}")


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        qn, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - qn * x1
        y0, y1 = y1, y0 - qn * y1
    return a, x0, y0


# ---------------------------------------------------------------------------
# the quotient space


@dataclass
class MinusSpace:
    N: int
    p1: P1Table
    m: int                      # dimension of the minus quotient
    free_reps: list[tuple[int, int]]
    proj_num: np.ndarray        # (#P1, m) int64: D * projection matrix
    proj_den: int
    boundary: np.ndarray | None  # (m, s) int64 functionals cutting cusps (None if s == 0)
    s_pairs: int
    genus: int


def build_minus_space(N: int) -> MinusSpace:
    p1 = P1Table(N)
    n = p1.size
    uf = _SignedUF(n)

    # two-term: x + x.S = 0 with S: (c:d) -> (d:-c); star: x.J = -x with
    # J: (c:d) -> (-c:d), i.e. x_i = -x_{iJ}
    for i, (c, d) in enumerate(p1.reps):
        j = p1.index(d, -c)
        uf.union(i, j, -1)
    for i, (c, d) in enumerate(p1.reps):
        j = p1.index(-c, d)
        uf.union(i, j, -1)

    # three-term: x + x.tau + x.tau^2 = 0 with tau: (c:d) -> (d:-c-d)
    seen = [False] * n
    rows: list[dict[int, int]] = []
    for i, (c, d) in enumerate(p1.reps):
        if seen[i]:
            continue
        j = p1.index(d, -c - d)
        k = p1.index(-c - d, c)
        orbit = {i, j, k}
        for t in orbit:
            seen[t] = True
        row: dict[int, int] = {}
        for t in (i, j, k):
            r, sg, z = uf.resolve(t)
            if z:
                continue
            row[r] = row.get(r, 0) + sg
        row = {v: cf for v, cf in row.items() if cf}
        if row:
            rows.append(row)

    roots = set()
    for i in range(n):
        r, _, z = uf.resolve(i)
        if not z:
            roots.add(r)
    solved, free = _eliminate(rows, roots)
    # single-variable relations solved to empty expressions mean the var is 0
    free_index = {v: k for k, v in enumerate(free)}
    m = len(free)

    # projection of every P^1 symbol onto the free generators
    den = 1
    exprs: dict[int, dict[int, Fraction]] = {}
    for v in free:
        exprs[v] = {v: Fraction(1)}
    for v, e in solved.items():
        exprs[v] = e
        for cf in e.values():
            den = den * cf.denominator // gcd(den, cf.denominator)
    assert den <= 2**16, f"projection denominator {den} unexpectedly large"

    proj = np.zeros((n, m), dtype=np.int64)
    for i in range(n):
        r, sg, z = uf.resolve(i)
        if z:
            continue
        e = exprs.get(r)
        if e is None:
            continue
        for v, cf in e.items():
            proj[i, free_index[v]] += sg * int(cf * den)
    assert int(np.abs(proj).max(initial=0)) <= 10**6

    g = genus(N)
    # boundary functionals
    cusps = CuspClasses(N)
    free_reps = [p1.reps[v] for v in free]
    gen_bnd: list[tuple[int, int]] = []
    for c, d in free_reps:
        c0, d0 = _lift_to_coprime(N, c, d)
        g_, x, y = _xgcd(c0, d0)
        assert g_ == 1
        # matrix (a b; c0 d0) with det 1: a*d0 - b*c0 = 1
        a, b = y, -x
        assert a * d0 - b * c0 == 1
        k1 = cusps.index(a, c0)   # image of infinity
        k2 = cusps.index(b, d0)   # image of zero
        gen_bnd.append((k1, k2))
    nc = len(cusps.reps)
    # star on cusps: a/c -> -a/c
    star = [cusps.index(-a, c) for a, c in cusps.reps]
    pairs = sorted({(min(i, star[i]), max(i, star[i])) for i in range(nc) if star[i] != i})
    s = len(pairs)
    assert m == g + s, f"minus quotient dim {m} != genus {g} + swapped pairs {s} at level {N}"

    boundary = None
    if s:
        pair_col = {}
        for k, (i, j) in enumerate(pairs):
            pair_col[i] = (k, 1)
            pair_col[j] = (k, -1)
        B = np.zeros((m, s), dtype=np.int64)
        for row, (k1, k2) in enumerate(gen_bnd):
            # delta(x) = [k1] - [k2]; functional phi_pair = coeff_i - coeff_j
            for kk, sgn in ((k1, 1), (k2, -1)):
                hit = pair_col.get(kk)
                if hit is not None:
                    col, eps = hit
                    B[row, col] += sgn * eps
        boundary = B
        assert np.linalg.matrix_rank(B.astype(float)) == s, "boundary functionals not independent"
    return MinusSpace(N, p1, m, free_reps, proj, den, boundary, s, g)


# ---------------------------------------------------------------------------
# Merel matrices and Hecke operators


@lru_cache(maxsize=None)
def _spf_sieve(limit: int) -> np.ndarray:
    spf = np.zeros(limit + 1, dtype=np.int64)
    for i in range(2, limit + 1):
        if spf[i] == 0:
            spf[i::i][spf[i::i] == 0] = i
    return spf


def _divisors_spf(n: int, spf: np.ndarray) -> list[int]:
    out = [1]
    while n > 1:
        p = int(spf[n])
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        out = [d * p**e for d in out for e in range(k + 1)]
    return out


@lru_cache(maxsize=None)
def merel_matrices(n: int) -> np.ndarray:
    """All integer matrices (a b; c d), det n, a > b >= 0, d > c >= 0."""
    limit = n + ((n - 1) // 2) * ((n + 1) // 2) + 1
    spf = _spf_sieve(max(limit, 4))
    out = []
    for b in range(0, n):
        for c in range(0, n - b):
            mm = n + b * c
            for a in _divisors_spf(mm, spf):
                if a > b and mm // a > c:
                    out.append((a, b, c, mm // a))
    arr = np.array(out, dtype=np.int64)
    order = np.lexsort((arr[:, 3], arr[:, 2], arr[:, 1], arr[:, 0]))
    return arr[order]


def hecke_matrix(space: MinusSpace, n: int) -> np.ndarray:
    """Integer matrix of proj_den * T_n acting on row vectors of the quotient."""
    N = space.N
    mats = merel_matrices(n)
    A, B, C, D = mats[:, 0], mats[:, 1], mats[:, 2], mats[:, 3]
    m = space.m
    counts = np.zeros((m, space.p1.size), dtype=np.int64)
    for j, (c, d) in enumerate(space.free_reps):
        u = (c * A + d * C) % N
        v = (c * B + d * D) % N
        idx = space.p1.orbit_of[u * N + v]
        idx = idx[idx >= 0]
        if idx.size:
            counts[j] += np.bincount(idx, minlength=space.p1.size).astype(np.int64)
    return counts @ space.proj_num


def boundary_consistency(space: MinusSpace, tn: np.ndarray) -> None:
    """Assert T_n descends through the boundary functionals.

    tn is the integer matrix proj_den * T_n.  The induced action on the
    boundary image must satisfy (tn @ B) = den * B @ X for a rational X;
    equivalently rowspace(B) absorbs tn @ B.
    """
    B = space.boundary
    if B is None:
        return
    lhs = tn @ B
    # solve B X = lhs over the rationals via least squares on independent rows
    Bf = B.astype(np.float64)
    X, *_ = np.linalg.lstsq(Bf, lhs.astype(np.float64), rcond=None)
    assert np.allclose(Bf @ X, lhs.astype(np.float64), atol=1e-6), (
        f"Hecke operator does not preserve the cuspidal part at level {space.N}"
    )


def quotient_action(space: MinusSpace, tn: np.ndarray) -> list[list[Fraction]]:
    """Exact matrix of T_n on the boundary quotient (s x s, rational)."""
    B = space.boundary
    s = space.s_pairs
    if B is None or s == 0:
        return []
    lhs = tn @ B  # den * T_n applied, then boundary
    # pick s independent rows of B by exact Gaussian elimination
    rowsB = [[Fraction(int(x)) for x in B[i]] for i in range(space.m)]
    rowsL = [[Fraction(int(x), space.proj_den) for x in lhs[i]] for i in range(space.m)]
    chosen: list[int] = []
    basis: list[tuple[list[Fraction], int]] = []
    for i in range(space.m):
        vec = list(rowsB[i])
        for bvec, piv in basis:
            f = vec[piv] / bvec[piv]
            if f:
                vec = [a - f * b for a, b in zip(vec, bvec)]
        piv = next((k for k, a in enumerate(vec) if a), None)
        if piv is not None:
            basis.append((vec, piv))
            chosen.append(i)
            if len(chosen) == s:
                break
    assert len(chosen) == s
    # solve (B[chosen]) X = L[chosen]
    M = [rowsB[i] + rowsL[i] for i in chosen]
    ncols = s
    for col in range(ncols):
        piv = next(r for r in range(col, s) if M[r][col])
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [a / pv for a in M[col]]
        for r in range(s):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [a - f * b for a, b in zip(M[r], M[col])]
    X = [[M[r][ncols + j] for j in range(s)] for r in range(s)]
    # verify on every row: B X == L exactly
    for i in range(space.m):
        for j in range(s):
            acc = sum((rowsB[i][k] * X[k][j] for k in range(s)), Fraction(0))
            assert acc == rowsL[i][j], (
                f"quotient action inconsistent at level {space.N}, row {i}"
            )
    return X


def charpoly_fraction_matrix(X: list[list[Fraction]]) -> list[int]:
    """Exact monic characteristic polynomial of a small rational matrix.

    Returns ascending integer coefficients; asserts integrality.
    """
    import sympy

    s = len(X)
    if s == 0:
        return [1]
    M = sympy.Matrix(s, s, lambda i, j: sympy.Rational(X[i][j].numerator, X[i][j].denominator))
    poly = M.charpoly()
    coeffs = list(reversed(poly.all_coeffs()))  # ascending
    out = []
    for c in coeffs:
        c = sympy.Rational(c)
        assert c.q == 1, "boundary quotient charpoly not integral"
        out.append(int(c))
    return out
