"""Weight spaces of derivations n+ -> M and the restricted H^1 they compute.

A derivation of weight mu sends e_k into the weight mu + k subspace of M.
With this convention Ext^1_{u(g)}(Z(mu), Z(lam)) is ``restricted_h1(Z(lam), mu)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gf
from .gf import ArtinSchreierField
from .rep import Representation, weight_basis, _is_diagonal

N_PLUS = 1  # n+ = g_1


@dataclass
class DerivationSpace:
    """Basis of a derivation weight space.

    ``basis`` rows are concatenated coordinates of d(e_1), ..., d(e_{p-2}),
    each restricted to the weight mu + k block ``blocks[k]`` of basis indices.
    """

    mu: int
    blocks: dict
    basis: np.ndarray

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def images(self, row: int, module_dim: int, field) -> dict:
        """Expand one basis derivation to full module vectors {k: d(e_k)}."""
        out, pos = {}, 0
        for k, idx in self.blocks.items():
            v = field.zeros(module_dim)
            v[idx] = self.basis[row, pos : pos + len(idx)]
            out[k] = v
            pos += len(idx)
        return out


def _graded(M: Representation) -> Representation:
    if M.start > 0:
        raise ValueError("derivation weights need e_0 in the acting algebra")
    if _is_diagonal(M.field, M.act(0)):
        return M
    P, _ = weight_basis(M)
    return M.change_basis(P)


def _weight_indices(M: Representation, w: int) -> np.ndarray:
    F = M.field
    diag = np.stack([M.act(0)[a, a] for a in range(M.dim)])
    target = F.scalar(w)
    hit = F.is_zero(F.sub(diag, target))
    return np.nonzero(hit)[0]


def _blocks(M: Representation, mu: int) -> dict:
    p = M.p
    return {k: _weight_indices(M, (mu + k) % p) for k in range(N_PLUS, p - 1)}


def _offsets(blocks: dict) -> dict:
    off, pos = {}, 0
    for k, idx in blocks.items():
        off[k] = pos
        pos += len(idx)
    return off


def _der_rows(M: Representation, mu: int, blocks: dict, restricted: bool) -> np.ndarray:
    F, p = M.field, M.p
    off = _offsets(blocks)
    ncols = sum(len(v) for v in blocks.values())
    rows = []
    ks = list(blocks)
    # (j - i) d(e_{i+j}) - e_i d(e_j) + e_j d(e_i) = 0, read in the weight mu+i+j block
    for a, i in enumerate(ks):
        for j in ks[a + 1 :]:
            out = _weight_indices(M, (mu + i + j) % p)
            if len(out) == 0:
                continue
            R = F.zeros((len(out), ncols))
            if i + j <= p - 2:
                for t in range(len(out)):
                    R[t, off[i + j] + t] = F.scalar(j - i)
            sj = slice(off[j], off[j] + len(blocks[j]))
            si = slice(off[i], off[i] + len(blocks[i]))
            R[:, sj] = F.sub(R[:, sj], M.act(i)[np.ix_(out, blocks[j])])
            R[:, si] = F.add(R[:, si], M.act(j)[np.ix_(out, blocks[i])])
            rows.append(R)
    if restricted:
        # e_k^(p-1) d(e_k) has weight mu + p k = mu
        out = _weight_indices(M, mu % p)
        for k in ks:
            if len(out) == 0 or len(blocks[k]) == 0:
                continue
            R = F.zeros((len(out), ncols))
            R[:, off[k] : off[k] + len(blocks[k])] = F.matpow(M.act(k), p - 1)[np.ix_(out, blocks[k])]
            rows.append(R)
    if not rows:
        return F.zeros((0, ncols))
    return np.concatenate(rows, axis=0)


def der_space(M: Representation, mu: int, restricted: bool = False) -> DerivationSpace:
    """Der(n+, M)_mu from the full constraint system on d(e_1), ..., d(e_{p-2})."""
    M = _graded(M)
    blocks = _blocks(M, mu)
    rows = _der_rows(M, mu, blocks, restricted)
    ncols = sum(len(v) for v in blocks.values())
    K = gf.kernel_basis(M.field, rows, ncols)
    return DerivationSpace(mu % M.p, blocks, K)


def inn_space(M: Representation, mu: int) -> DerivationSpace:
    """Span of x -> x.m for m in M_mu, in the coordinates of ``der_space``."""
    M = _graded(M)
    F = M.field
    blocks = _blocks(M, mu)
    src = _weight_indices(M, mu % M.p)
    vecs = []
    for s in src:
        parts = [M.act(k)[blocks[k], s] for k in blocks]
        vecs.append(np.concatenate(parts, axis=0))
    ncols = sum(len(v) for v in blocks.values())
    if not vecs:
        return DerivationSpace(mu % M.p, blocks, F.zeros((0, ncols)))
    V = np.stack(vecs)
    if isinstance(F, ArtinSchreierField):
        basis = _row_basis_ext(F, V)
    else:
        basis, _ = gf.rref(V, F.p)
    return DerivationSpace(mu % M.p, blocks, basis)


def _row_basis_ext(F: ArtinSchreierField, V: np.ndarray) -> np.ndarray:
    keep, r = [], 0
    for v in V:
        cand = np.stack(keep + [v])
        rr = gf.rank(F, cand)
        if rr > r:
            keep.append(v)
            r = rr
    return np.stack(keep) if keep else F.zeros((0, V.shape[1]))


def h1_weight(M: Representation, mu: int) -> int:
    """dim H^1(n+, M)_mu = dim Der - dim Inn."""
    return der_space(M, mu).dim - inn_space(M, mu).dim


def restricted_h1(M: Representation, mu: int) -> int:
    """dim H^1(u(n+), M)_mu: derivations with e_k^(p-1) d(e_k) = 0 for all k, modulo inner ones."""
    return der_space(M, mu, restricted=True).dim - inn_space(M, mu).dim


def borel_part(M: Representation) -> Representation:
    return M if M.start == 0 else M.restrict(0)


# ---------------------------------------------------------------------------
# closed-form polynomials from the generator reduction


def _poly_values(name: str, j, lam):
    if name == "p15":
        return 1, 6, (10 * j + 8 * lam + 7 * j**2 + 27 * j * lam + 20 * lam**2 + 16 * j * lam**2
                      + j**3 + 12 * lam**3 + 7 * j**2 * lam)
    if name == "p25":
        return -1, 6, (6 * j**2 + 5 * j + 18 * j * lam + 4 * lam + 12 * lam**2 + 6 * j**2 * lam
                       + j**3 + 12 * j * lam**2 + 8 * lam**3)
    if name == "p17":
        return 1, 6, (14 * j + 12 * lam + 9 * j**2 + 39 * j * lam + 30 * lam**2 + 24 * j * lam**2
                      + j**3 + 18 * lam**3 + 9 * j**2 * lam)
    if name == "p27":
        return -1, 6, (7 * j + 6 * lam + 8 * j**2 + 26 * j * lam + 18 * lam**2 + 18 * j * lam**2
                       + j**3 + 12 * lam**3 + 8 * j**2 * lam)
    raise KeyError(f"unknown polynomial {name!r}; expected p15, p25, p17 or p27")


POLY_NAMES = ("p15", "p25", "p17", "p27")


def der_poly_eval(name: str, j, lam, p: int):
    """Evaluate one of the four derivation-obstruction polynomials at (j, lam).

    ``j`` and ``lam`` may be ints (result is an int mod p) or field elements
    (FieldElem / ExtFieldElem, result of the same type).
    """
    sign, den, val = _poly_values(name, j, lam)
    inv6 = pow(den, -1, p)
    if isinstance(val, int):
        return (sign * inv6 * val) % p
    return val * (sign * inv6 % p)


def der_polys_vanish(p: int, j: int, lam: int) -> bool:
    return all(der_poly_eval(n, j, lam, p) == 0 for n in POLY_NAMES)


__all__ = [
    "DerivationSpace", "der_space", "inn_space", "h1_weight", "restricted_h1",
    "der_poly_eval", "der_polys_vanish", "POLY_NAMES", "borel_part",
]


