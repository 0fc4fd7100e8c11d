"""Independent brute-force reference implementation for cross-checks.

Everything here is rebuilt from first principles with explicit full-register
matrices assembled by Kronecker products - deliberately a different code
path from the package (which uses axis contractions), so agreement is a
meaningful check. Shares only the public conventions: qubit 1 = MSB, the
Bell labeling, the V construction, and the recognition-target definitions.
"""
from __future__ import annotations

from functools import reduce
from itertools import product

import numpy as np

S2 = np.sqrt(2.0)
S3 = np.sqrt(3.0)

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)

# Elementary transition matrices |r><c|.
E = {(r, c): np.zeros((2, 2), dtype=complex) for r in range(2) for c in range(2)}
for (r, c), m in E.items():
    m[r, c] = 1.0


def ket(bits: str) -> np.ndarray:
    v = np.zeros(2 ** len(bits), dtype=complex)
    v[int(bits, 2)] = 1.0
    return v


BELL = {
    (0, 0): (ket("00") + ket("11")) / S2,
    (1, 0): (ket("00") - ket("11")) / S2,
    (0, 1): (ket("01") + ket("10")) / S2,
    (1, 1): (ket("01") - ket("10")) / S2,
}

V = np.array(
    [
        [1 / S2, 0, 0, 1 / S2],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [1 / S2, 0, 0, -1 / S2],
    ],
    dtype=complex,
)

WC_INITIAL = {"A": "101", "T": "010", "G": "011", "C": "100"}


def kron_chain(factors: list[np.ndarray]) -> np.ndarray:
    return reduce(np.kron, factors)


def embed_one(mat: np.ndarray, q: int, n: int) -> np.ndarray:
    """1-qubit operator on qubit q (1-based) as a full 2^n matrix."""
    return kron_chain([mat if k == q else I2 for k in range(1, n + 1)])


def embed_two(mat: np.ndarray, i: int, j: int, n: int) -> np.ndarray:
    """2-qubit operator on (i, j) as a full matrix, via elementary sums."""
    total = np.zeros((2**n, 2**n), dtype=complex)
    for (r1, r2), (c1, c2) in product(product(range(2), repeat=2), repeat=2):
        coeff = mat[2 * r1 + r2, 2 * c1 + c2]
        if coeff == 0:
            continue
        factors = []
        for q in range(1, n + 1):
            if q == i:
                factors.append(E[(r1, c1)])
            elif q == j:
                factors.append(E[(r2, c2)])
            else:
                factors.append(I2)
        total += coeff * kron_chain(factors)
    return total


def bell_projector(label: tuple[int, int], pair: tuple[int, int], n: int) -> np.ndarray:
    b = BELL[label]
    return embed_two(np.outer(b, b.conj()), pair[0], pair[1], n)


def build_u(completion: str = "ascending") -> np.ndarray:
    """Recognition unitary at the default angles, by column assignment."""
    u = np.zeros((8, 8), dtype=complex)
    u[:, 0b101] = (ket("011") - ket("101")) / S2
    u[:, 0b010] = (ket("010") + ket("100")) / S2
    u[:, 0b011] = (ket("011") + ket("101") + ket("110")) / S3
    u[:, 0b100] = (ket("100") - ket("010") + ket("001")) / S3
    assigned = [0b101, 0b010, 0b011, 0b100]
    free = [i for i in range(8) if i not in assigned]
    order = free if completion == "ascending" else free[::-1]
    fixed = [u[:, k] for k in assigned]
    for idx, cand in zip(free, order):
        v = np.zeros(8, dtype=complex)
        v[cand] = 1.0
        for c in fixed:
            v = v - np.vdot(c, v) * c
        v = v / np.linalg.norm(v)
        u[:, idx] = v
        fixed.append(v)
    return u


def interleave(prod_state: np.ndarray) -> np.ndarray:
    """Reorder |t1 t2 t3 i1 i2 i3> into |t1 i1 t2 i2 t3 i3>."""
    out = np.zeros_like(prod_state)
    for idx in range(64):
        bits = [(idx >> (5 - k)) & 1 for k in range(6)]
        t1, t2, t3, i1, i2, i3 = bits
        new_bits = [t1, i1, t2, i2, t3, i3]
        new_idx = 0
        for b in new_bits:
            new_idx = (new_idx << 1) | b
        out[new_idx] = prod_state[idx]
    return out


def pair_state(template: str, incoming: str, u: np.ndarray | None = None) -> np.ndarray:
    u = build_u() if u is None else u
    q1 = u @ ket(WC_INITIAL[template])
    q2 = u @ ket(WC_INITIAL[incoming])
    return interleave(np.kron(q1, q2))


def run_swap(psi0: np.ndarray, v_mat: np.ndarray = V) -> list[dict]:
    """Full enumeration of the five-step protocol on a 6-qubit state."""
    n = 6
    psi = embed_two(v_mat, 3, 5, n) @ psi0
    x4x5 = embed_one(X, 4, n) @ embed_one(X, 5, n)
    x2x5 = embed_one(X, 2, n) @ embed_one(X, 5, n)
    out = []
    for lab34 in BELL:
        phi = bell_projector(lab34, (3, 4), n) @ psi
        p34 = float(np.vdot(phi, phi).real)
        if p34 < 1e-14:
            continue
        phi = phi / np.sqrt(p34)
        if lab34[1] == 0:
            phi = x4x5 @ phi
        for lab12 in BELL:
            chi = bell_projector(lab12, (1, 2), n) @ phi
            p12 = float(np.vdot(chi, chi).real)
            if p12 < 1e-14:
                continue
            chi = chi / np.sqrt(p12)
            if lab12[1] == 0:
                chi = x2x5 @ chi
            f12, f34 = (lab12[0], 1), (lab34[0], 1)
            ref01 = kron_chain([BELL[f12], BELL[f34], ket("01")])
            ref10 = kron_chain([BELL[f12], BELL[f34], ket("10")])
            out.append(
                {
                    "raw34": lab34,
                    "raw12": lab12,
                    "p": p34 * p12,
                    "a": complex(np.vdot(ref01, chi)),
                    "b": complex(np.vdot(ref10, chi)),
                    "state": chi,
                }
            )
    return out


def canonical_rows(branches: list[dict]) -> dict[tuple[int, int], list[list[float]]]:
    """Group by (j, m), phase-normalize, merge identical, sort by -P."""
    groups: dict[tuple[int, int], list[list[float]]] = {}
    for br in branches:
        key = (br["raw12"][0], br["raw34"][0])
        a, b = br["a"], br["b"]
        phase = a / abs(a) if abs(a) > 1e-12 else b / abs(b)
        an, bn = (a / phase).real, (b / phase).real
        an = 0.0 if abs(an) < 1e-12 else an
        bn = 0.0 if abs(bn) < 1e-12 else bn
        rows = groups.setdefault(key, [])
        for row in rows:
            if abs(row[0] - an) < 1e-10 and abs(row[1] - bn) < 1e-10:
                row[2] += br["p"]
                break
        else:
            rows.append([an, bn, br["p"]])
    for rows in groups.values():
        rows.sort(key=lambda r: (-r[2], -abs(r[0])))
    return groups
