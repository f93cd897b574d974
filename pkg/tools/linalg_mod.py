"""Exact linear algebra via word-size primes, CRT and rational reconstruction.

Heavy matrix work (characteristic polynomials, eigenvalue coordinate solves)
runs modulo a deterministic list of 26-bit primes in numba kernels; small
exact results are recovered by CRT once they stabilize and are then verified
against fresh primes not used in the reconstruction.
"""

from __future__ import annotations

from math import gcd, isqrt

import numpy as np
from numba import njit

# deterministic 26-bit primes, descending from 2^26
def _gen_primes(start: int, count: int) -> list[int]:
    out = []
    n = start
    while len(out) < count:
        n -= 1
        k, isp = 3, n % 2 != 0
        while isp and k * k <= n:
            if n % k == 0:
                isp = False
            k += 2
        if isp:
            out.append(n)
    return out


MOD_PRIMES: list[int] = _gen_primes(1 << 26, 320)


@njit(cache=True)
def _modinv(a: int, p: int) -> int:
    # extended euclid; a nonzero mod p
    t, newt = 0, 1
    r, newr = p, a % p
    while newr != 0:
        q = r // newr
        t, newt = newt, t - q * newt
        r, newr = newr, r - q * newr
    if t < 0:
        t += p
    return t


@njit(cache=True)
def charpoly_mod(A: np.ndarray, p: int) -> np.ndarray:
    """Characteristic polynomial of A mod p, ascending coefficients.

    Reduces to upper Hessenberg form by similarity, then runs the standard
    leading-minor recurrence.
    """
    n = A.shape[0]
    H = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            H[i, j] = A[i, j] % p
    for j in range(n - 2):
        piv = -1
        for i in range(j + 1, n):
            if H[i, j] != 0:
                piv = i
                break
        if piv == -1:
            continue
        if piv != j + 1:
            for k in range(n):
                tmp = H[piv, k]
                H[piv, k] = H[j + 1, k]
                H[j + 1, k] = tmp
            for k in range(n):
                tmp = H[k, piv]
                H[k, piv] = H[k, j + 1]
                H[k, j + 1] = tmp
        inv = _modinv(H[j + 1, j], p)
        for i in range(j + 2, n):
            if H[i, j] != 0:
                f = (H[i, j] * inv) % p
                for k in range(n):
                    H[i, k] = (H[i, k] - f * H[j + 1, k]) % p
                for k in range(n):
                    H[k, j + 1] = (H[k, j + 1] + f * H[k, i]) % p
    # charpoly recurrence over leading principal minors of the Hessenberg form
    polys = np.zeros((n + 1, n + 1), dtype=np.int64)
    polys[0, 0] = 1
    for k in range(1, n + 1):
        # p_k = (x - H[k-1,k-1]) p_{k-1} - sum_j H[j-1,k-1] (prod subdiag) p_{j-1}
        a = H[k - 1, k - 1] % p
        for c in range(k):
            polys[k, c + 1] = polys[k - 1, c]
        for c in range(k):
            polys[k, c] = (polys[k, c] - a * polys[k - 1, c]) % p
        prod = 1
        for j in range(k - 1, 0, -1):
            prod = (prod * H[j, j - 1]) % p
            if prod == 0:
                break
            coeff = (H[j - 1, k - 1] * prod) % p
            if coeff != 0:
                for c in range(j):
                    polys[k, c] = (polys[k, c] - coeff * polys[j - 1, c]) % p
    return polys[n, : n + 1].copy()


@njit(cache=True)
def matvec_mod(v: np.ndarray, A: np.ndarray, p: int) -> np.ndarray:
    """Row vector times matrix, mod p."""
    n = A.shape[0]
    out = np.zeros(n, dtype=np.int64)
    for j in range(n):
        acc = 0
        for i in range(n):
            acc = (acc + v[i] * A[i, j]) % p
        out[j] = acc
    return out


@njit(cache=True)
def poly_apply_row_mod(
    r: np.ndarray, A: np.ndarray, coeffs: np.ndarray, p: int
) -> np.ndarray:
    """r * f(A) mod p for ascending coeffs, by Horner on row vectors."""
    n = A.shape[0]
    acc = np.zeros(n, dtype=np.int64)
    for k in range(coeffs.shape[0] - 1, -1, -1):
        acc = matvec_mod(acc, A, p)
        c = coeffs[k] % p
        if c:
            for i in range(n):
                acc[i] = (acc[i] + c * r[i]) % p
    return acc


@njit(cache=True)
def solve_on_columns(
    W: np.ndarray, cols: np.ndarray, rhs: np.ndarray, p: int
) -> tuple[np.ndarray, int]:
    """Solve x @ W[:, cols] = rhs[cols] mod p.  Returns (x, ok)."""
    d = W.shape[0]
    # equations: sum_j x_j W[j, cols[i]] = rhs[cols[i]]
    E = np.empty((d, d + 1), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            E[i, j] = W[j, cols[i]] % p
        E[i, d] = rhs[cols[i]] % p
    x = np.zeros(d, dtype=np.int64)
    for col in range(d):
        piv = -1
        for r2 in range(col, d):
            if E[r2, col] != 0:
                piv = r2
                break
        if piv == -1:
            return x, 0
        if piv != col:
            for k in range(d + 1):
                tmp = E[piv, k]
                E[piv, k] = E[col, k]
                E[col, k] = tmp
        inv = _modinv(E[col, col], p)
        for k in range(d + 1):
            E[col, k] = (E[col, k] * inv) % p
        for r2 in range(d):
            if r2 != col and E[r2, col] != 0:
                f = E[r2, col]
                for k in range(d + 1):
                    E[r2, k] = (E[r2, k] - f * E[col, k]) % p
    for i in range(d):
        x[i] = E[i, d]
    return x, 1


@njit(cache=True)
def rref_pivot_columns(W: np.ndarray, p: int) -> tuple[np.ndarray, int]:
    """Pivot columns of the row space of W mod p; returns (cols, rank)."""
    d, n = W.shape
    M = np.empty((d, n), dtype=np.int64)
    for i in range(d):
        for j in range(n):
            M[i, j] = W[i, j] % p
    cols = np.empty(d, dtype=np.int64)
    rank = 0
    col = 0
    while col < n and rank < d:
        piv = -1
        for r2 in range(rank, d):
            if M[r2, col] != 0:
                piv = r2
                break
        if piv == -1:
            col += 1
            continue
        if piv != rank:
            for k in range(n):
                tmp = M[piv, k]
                M[piv, k] = M[rank, k]
                M[rank, k] = tmp
        inv = _modinv(M[rank, col], p)
        for k in range(n):
            M[rank, k] = (M[rank, k] * inv) % p
        for r2 in range(d):
            if r2 != rank and M[r2, col] != 0:
                f = M[r2, col]
                for k in range(n):
                    M[r2, k] = (M[r2, k] - f * M[rank, k]) % p
        cols[rank] = col
        rank += 1
        col += 1
    return cols, rank


# ---------------------------------------------------------------------------
# CRT and rational reconstruction (exact, python ints)


def crt_pair(r1: int, m1: int, r2: int, m2: int) -> tuple[int, int]:
    g, s, _ = _xgcd_int(m1, m2)
    assert g == 1
    m = m1 * m2
    r = (r1 + (r2 - r1) * s % m2 * m1) % m
    return r, m


def _xgcd_int(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def symmetric(r: int, m: int) -> int:
    r %= m
    return r - m if r > m // 2 else r


def rational_reconstruct(r: int, m: int) -> tuple[int, int] | None:
    """Find n/d = r mod m with |n|, d <= sqrt(m/2), gcd(d, m) = 1."""
    bound = isqrt(m // 2)
    v0, v1 = (m, 0), (r % m, 1)
    while v1[0] > bound:
        q = v0[0] // v1[0]
        v0, v1 = v1, (v0[0] - q * v1[0], v0[1] - q * v1[1])
    n, d = v1[0], v1[1]
    if d < 0:
        n, d = -n, -d
    if d == 0 or abs(n) > bound or d > bound or gcd(n, d) != 1 or gcd(d, m) != 1:
        return None
    if (n - r * d) % m != 0:
        return None
    return n, d


class StabilizingCRT:
    """Accumulate residue vectors until symmetric lifts stop changing."""

    def __init__(self, size: int, confirmations: int = 2) -> None:
        self.size = size
        self.confirm = confirmations
        self.modulus = 1
        self.residues = [0] * size
        self.stable_count = 0
        self.last: tuple[int, ...] | None = None

    def add(self, vec, p: int) -> bool:
        """Add one residue vector mod p; True once values are stable."""
        if self.modulus == 1:
            self.residues = [int(v) % p for v in vec]
            self.modulus = p
        else:
            for i in range(self.size):
                self.residues[i], _ = crt_pair(
                    self.residues[i], self.modulus, int(vec[i]) % p, p
                )
            self.modulus *= p
        lift = tuple(symmetric(r, self.modulus) for r in self.residues)
        if lift == self.last:
            self.stable_count += 1
        else:
            self.stable_count = 0
            self.last = lift
        return self.stable_count >= self.confirm

    def integers(self) -> list[int]:
        assert self.last is not None
        return list(self.last)
