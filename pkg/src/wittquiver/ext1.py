"""Ext^1 between modules of u(g_start, chi) as restricted 1-cocycles modulo coboundaries.

Unknowns are the blocks d(e_k) in Hom(S, T), one per basis vector of the
acting algebra.  The system consists of the Lie cocycle rows

    (j - i) d_{i+j} - T_i d_j + d_j S_i + T_j d_i - d_i S_j = 0      (i < j)

and one restrictedness row per basis vector

    sum_{a+b=p-1} T_k^a d_k S_k^b - delta_{k0} d_0 = 0.

When e_0 acts diagonalizably (always the case here), the torus e_0 acts on
cocycles through coboundaries, so only the weight-zero part contributes: an
entry (r, c) of d_k is kept only if wt_T(r) - wt_S(c) = k.  ``reduce=False``
assembles the full system instead, as an independent check.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import gf
from .gf import ArtinSchreierField
from .rep import Representation, _is_diagonal, weight_basis
from .witt import witt

DEFAULT_CAP = 20000


class SizeCapExceeded(RuntimeError):
    def __init__(self, unknowns: int, cap: int):
        super().__init__(
            f"cocycle system has {unknowns} unknowns, above the cap of {cap}; raise the cap to force it"
        )
        self.unknowns = unknowns
        self.cap = cap


class EngineDisagreement(RuntimeError):
    def __init__(self, pair, values: dict):
        super().__init__(f"engines disagree on {pair}: {values}")
        self.pair = pair
        self.values = values


@dataclass
class Ext1Result:
    dim: int
    cocycle_dim: int
    coboundary_dim: int
    hom_dim: int
    unknowns: int
    reduced: bool
    # cocycle representatives of a basis of Ext^1, shape (dim, n_alg, dim T, dim S[, p]),
    # in the original coordinates of S and T
    classes: np.ndarray | None = None
    notes: list = dc_field(default_factory=list)

    def __int__(self):
        return self.dim


def _check_pair(S: Representation, T: Representation) -> None:
    if S.p != T.p or S.chi != T.chi:
        raise ValueError("source and target must be modules for the same p and character")
    if S.start != T.start:
        raise ValueError("source and target must be modules over the same subalgebra")
    if type(S.field) is not type(T.field):
        raise ValueError("source and target must share a scalar field")


def _with_weights(M: Representation):
    """(module with diagonal e_0, change-of-basis P, weights) or None if e_0 is absent."""
    if M.start > 0:
        return M, None, None
    F = M.field
    A0 = M.act(0)
    if _is_diagonal(F, A0):
        return M, None, np.stack([A0[a, a] for a in range(M.dim)])
    try:
        P, w = weight_basis(M)
    except ValueError:
        return M, None, None  # e_0 not diagonalizable over this field: solve the full system
    return M.change_basis(P), P, w


def _weight_masks(F, wT, wS, p: int) -> np.ndarray:
    """mask[k mod p, r, c] iff wt_T(r) - wt_S(c) = k in F_p."""
    diff = F.sub(wT[:, None], wS[None, :])
    if isinstance(F, ArtinSchreierField):
        if np.any(diff[..., 1:] % p):
            # weights differing by a non-rational amount pair no entries
            rational = ~np.any(diff[..., 1:] % p, axis=-1)
        else:
            rational = np.ones(diff.shape[:-1], dtype=bool)
        vals = diff[..., 0]
    else:
        rational = np.ones(diff.shape, dtype=bool)
        vals = diff
    return np.stack([(vals % p == k) & rational for k in range(p)])


def _outer_block(F, A: np.ndarray | None, B: np.ndarray | None, rs, cs, nT: int, nS: int) -> np.ndarray:
    """Columns of X -> A X B on the matrix units E_{r c} for (r, c) in zip(rs, cs).

    A or B equal to None means the identity.  Returns (nT * nS, m[, p]).
    """
    m = len(rs)
    if A is None:
        left = F.zeros((m, nT))
        left[np.arange(m), rs] = F.scalar(1)
    else:
        left = np.swapaxes(A[:, rs], 0, 1)
    if B is None:
        right = F.zeros((m, nS))
        right[np.arange(m), cs] = F.scalar(1)
    else:
        right = B[cs, :]
    prod = F.mul(left[:, :, None], right[:, None, :])  # (m, nT, nS)
    prod = prod.reshape((m, nT * nS) + prod.shape[3:])
    return np.swapaxes(prod, 0, 1)


@dataclass
class CocycleSystem:
    """Assembled linear system for restricted cocycles S -> T."""

    field: object
    matrix: np.ndarray
    columns: dict  # k -> (rows idx rs, cols idx cs) of the unknown entries of d_k
    offsets: dict
    n_unknowns: int
    reduced: bool
    weights: tuple | None = None  # (wt_T, wt_S) when reduced


def cocycle_system(S: Representation, T: Representation, reduce: bool = True,
                   cap: int = DEFAULT_CAP, wS=None, wT=None) -> CocycleSystem:
    F, p = S.field, S.p
    nT, nS = T.dim, S.dim
    ks = list(S.indices)
    use_weights = reduce and wS is not None and wT is not None
    if use_weights:
        masks = _weight_masks(F, wT, wS, p)
        sel = {k: np.nonzero(masks[k % p]) for k in ks}
    else:
        allr, allc = np.divmod(np.arange(nT * nS), nS)
        sel = {k: (allr, allc) for k in ks}
    offsets, pos = {}, 0
    for k in ks:
        offsets[k] = pos
        pos += len(sel[k][0])
    n = pos
    if n > cap:
        raise SizeCapExceeded(n, cap)

    def out_rows(weight: int) -> np.ndarray:
        if use_weights:
            r, c = np.nonzero(masks[weight % p])
            return r * nS + c
        return np.arange(nT * nS)

    blocks = []
    for a, i in enumerate(ks):
        for j in ks[a + 1 :]:
            rows = out_rows(i + j)
            if len(rows) == 0:
                continue
            R = F.zeros((len(rows), n))
            if i + j <= p - 2:
                rs, cs = sel[i + j]
                R[:, offsets[i + j] : offsets[i + j] + len(rs)] = F.scale(
                    j - i, _outer_block(F, None, None, rs, cs, nT, nS)[rows])
            rs, cs = sel[j]
            if len(rs):
                blk = F.sub(_outer_block(F, None, S.act(i), rs, cs, nT, nS),
                            _outer_block(F, T.act(i), None, rs, cs, nT, nS))[rows]
                sl = slice(offsets[j], offsets[j] + len(rs))
                R[:, sl] = F.add(R[:, sl], blk)
            rs, cs = sel[i]
            if len(rs):
                blk = F.sub(_outer_block(F, T.act(j), None, rs, cs, nT, nS),
                            _outer_block(F, None, S.act(j), rs, cs, nT, nS))[rows]
                sl = slice(offsets[i], offsets[i] + len(rs))
                R[:, sl] = F.add(R[:, sl], blk)
            blocks.append(R)
    for k in ks:
        rows = out_rows(p * k)
        rs, cs = sel[k]
        if len(rows) == 0 or len(rs) == 0:
            continue
        Tk, Sk = T.act(k), S.act(k)
        Tpow = [F.eye(nT)]
        Spow = [F.eye(nS)]
        for _ in range(p - 1):
            Tpow.append(F.matmul(Tpow[-1], Tk))
            Spow.append(F.matmul(Spow[-1], Sk))
        acc = None
        for a in range(p):
            term = _outer_block(F, Tpow[a], Spow[p - 1 - a], rs, cs, nT, nS)
            acc = term if acc is None else F.add(acc, term)
        if k == 0:
            acc = F.sub(acc, _outer_block(F, None, None, rs, cs, nT, nS))
        R = F.zeros((len(rows), n))
        R[:, offsets[k] : offsets[k] + len(rs)] = acc[rows]
        blocks.append(R)
    matrix = np.concatenate(blocks, axis=0) if blocks else F.zeros((0, n))
    return CocycleSystem(F, matrix, sel, offsets, n, use_weights, (wT, wS) if use_weights else None)


def _hom_system(S: Representation, T: Representation, mask: np.ndarray | None,
                masks: np.ndarray | None = None) -> tuple[np.ndarray, tuple]:
    """With ``masks`` (all weights), the e_i equation keeps only output entries of weight i."""
    F = S.field
    nT, nS = T.dim, S.dim
    if mask is None:
        rs, cs = np.divmod(np.arange(nT * nS), nS)
    else:
        rs, cs = np.nonzero(mask)
    blocks = []
    for i in S.indices:
        B = F.sub(_outer_block(F, T.act(i), None, rs, cs, nT, nS),
                  _outer_block(F, None, S.act(i), rs, cs, nT, nS))
        if masks is not None:
            B = B[masks[i % S.p].reshape(-1)]
        blocks.append(B)
    return np.concatenate(blocks, axis=0), (rs, cs)


def hom_dim(S: Representation, T: Representation) -> int:
    """dim Hom(S, T), using the e_0-weight grading when both modules admit it."""
    _check_pair(S, T)
    if S.start <= 0:
        S0, _, wS = _with_weights(S)
        T0, _, wT = _with_weights(T)
        if wS is not None and wT is not None:
            masks = _weight_masks(S.field, wT, wS, S.p)
            if not masks[0].any():
                return 0
            A, (rs, _) = _hom_system(S0, T0, masks[0], masks)
            return len(rs) - gf.rank(S.field, A)
    return hom_space(S, T).dim


@dataclass
class HomResult:
    dim: int
    basis: np.ndarray  # (dim, dim T, dim S[, p]) intertwiners


def hom_space(S: Representation, T: Representation) -> HomResult:
    """Intertwiners X with T(e_i) X = X S(e_i) for every basis vector e_i."""
    _check_pair(S, T)
    F = S.field
    A, (rs, cs) = _hom_system(S, T, None)
    K = gf.kernel_basis(F, A, len(rs))
    basis = F.zeros((K.shape[0], T.dim, S.dim))
    for t in range(K.shape[0]):
        basis[t, rs, cs] = K[t]
    return HomResult(K.shape[0], basis)


def is_isomorphic(S: Representation, T: Representation) -> bool:
    """Isomorphism test via a random element of Hom(S, T) (exact when Hom is at most 1-dimensional
    or both modules are simple)."""
    if S.dim != T.dim or S.p != T.p or S.chi != T.chi:
        return False
    H = hom_space(S, T)
    if H.dim == 0:
        return False
    F = S.field
    rng = np.random.default_rng(0)
    for _ in range(8):
        c = F.random(rng, H.dim)
        X = F.zeros((T.dim, S.dim))
        for t in range(H.dim):
            X = F.add(X, F.mul(H.basis[t], c[t] if c.ndim > 1 else c[t]))
        if gf.rank(F, X) == S.dim:
            return True
    return False


def _coboundary_vectors(S, T, sys: CocycleSystem, F) -> np.ndarray:
    """delta(m) for matrix units m in the relevant weight, in unknown coordinates."""
    nT, nS = T.dim, S.dim
    rows = []
    ks = list(S.indices)
    if sys.reduced:
        units = list(zip(*np.nonzero(_weight_masks(F, *sys.weights, S.p)[0])))
    else:
        units = [(r, c) for r in range(nT) for c in range(nS)]
    for r, c in units:
        v = F.zeros(sys.n_unknowns)
        m = F.zeros((nT, nS))
        m[r, c] = F.scalar(1)
        for k in ks:
            dk = F.sub(F.matmul(T.act(k), m), F.matmul(m, S.act(k)))
            rs, cs = sys.columns[k]
            v[sys.offsets[k] : sys.offsets[k] + len(rs)] = dk[rs, cs]
        rows.append(v)
    return np.stack(rows) if rows else F.zeros((0, sys.n_unknowns))


def ext1(S: Representation, T: Representation, reduce: bool = True, cap: int = DEFAULT_CAP,
         classes: bool = False) -> Ext1Result:
    """dim Ext^1_{u(g_start, chi)}(S, T) by the cocycle method."""
    _check_pair(S, T)
    F, p = S.field, S.p
    S0, PS, wS = (S, None, None)
    T0, PT, wT = (T, None, None)
    if reduce and S.start <= 0:
        S0, PS, wS = _with_weights(S)
        T0, PT, wT = _with_weights(T)
    sys = cocycle_system(S0, T0, reduce, cap, wS, wT)
    null = gf.nullity(F, sys.matrix) if sys.matrix.shape[0] else sys.n_unknowns
    if sys.reduced:
        mask0 = _weight_masks(F, wT, wS, p)[0]
        c0 = int(mask0.sum())
        A, _ = _hom_system(S0, T0, mask0, _weight_masks(F, wT, wS, p))
        hom = c0 - gf.rank(F, A) if c0 else 0
    else:
        c0 = T.dim * S.dim
        hom = hom_space(S0, T0).dim
    cob = c0 - hom
    res = Ext1Result(null - cob, null, cob, hom, sys.n_unknowns, sys.reduced)
    if classes and res.dim:
        res.classes = _class_representatives(S0, T0, sys, F, PS, PT, S, T)
    return res


def _class_representatives(S0, T0, sys, F, PS, PT, S, T) -> np.ndarray:
    Z = gf.kernel_basis(F, sys.matrix, sys.n_unknowns)
    B = _coboundary_vectors(S0, T0, sys, F)
    keep = []
    base = B
    r = gf.rank(F, base) if base.shape[0] else 0
    for z in Z:
        cand = np.concatenate([base, z[None]], axis=0)
        rr = gf.rank(F, cand)
        if rr > r:
            keep.append(z)
            base, r = cand, rr
    out = []
    PSinv = gf.inverse(F, PS) if PS is not None else None
    for z in keep:
        d = F.zeros((len(list(S.indices)), T.dim, S.dim))
        for t, k in enumerate(S.indices):
            rs, cs = sys.columns[k]
            d[t, rs, cs] = z[sys.offsets[k] : sys.offsets[k] + len(rs)]
            if PT is not None:
                d[t] = F.matmul(PT, d[t])
            if PSinv is not None:
                d[t] = F.matmul(d[t], PSinv)
        out.append(d)
    return np.stack(out)


def coboundary(S: Representation, T: Representation, m: np.ndarray) -> np.ndarray:
    """d_m(e_k) = T(e_k) m - m S(e_k), stacked over the acting basis."""
    F = S.field
    return np.stack([F.sub(F.matmul(T.act(k), m), F.matmul(m, S.act(k))) for k in S.indices])


def extension_module(S: Representation, T: Representation, d: np.ndarray) -> Representation:
    """The module [[T, d], [0, S]] on T (+) S."""
    F = S.field
    nT, nS = T.dim, S.dim
    mats = []
    for t, k in enumerate(S.indices):
        A = F.zeros((nT + nS, nT + nS))
        A[:nT, :nT] = T.act(k)
        A[:nT, nT:] = d[t]
        A[nT:, nT:] = S.act(k)
        mats.append(A)
    return Representation(S.p, S.chi, F, S.start, np.stack(mats), None, f"[{T.label}|{S.label}]")


def verify_cocycle(d: np.ndarray, S: Representation, T: Representation, trials: int = 100,
                   rng: np.random.Generator | None = None) -> bool:
    """Check E(x)^p - E(x^[p]) - chi(x)^p = 0 and E([x, y]) = [E(x), E(y)] on random elements."""
    rng = rng or np.random.default_rng(0)
    E = extension_module(S, T, d)
    F, p = E.field, E.p
    W = witt(p)
    I = F.eye(E.dim)
    for _ in range(trials):
        x = W.random_element(rng, E.start)
        y = W.random_element(rng, E.start)
        Ex, Ey = E.act_element(x), E.act_element(y)
        lhs = F.sub(F.matpow(Ex, p), E.act_element(W.p_power(x)))
        lhs = F.sub(lhs, F.scale(pow(E.chi(x), p, p), I))
        if not np.all(F.is_zero(lhs)):
            return False
        br = F.sub(F.matmul(Ex, Ey), F.matmul(Ey, Ex))
        if not np.all(F.is_zero(F.sub(br, E.act_element(W.bracket(x, y))))):
            return False
    return True


__all__ = [
    "DEFAULT_CAP", "SizeCapExceeded", "EngineDisagreement", "Ext1Result", "CocycleSystem",
    "HomResult", "cocycle_system", "hom_dim", "hom_space", "is_isomorphic", "ext1", "coboundary",
    "extension_module", "verify_cocycle",
]

