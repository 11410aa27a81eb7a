"""Modules for reduced enveloping algebras u(g_start, chi) of W(1,1).

A ``Representation`` stores one action matrix per basis vector
e_start, ..., e_{p-2} of the acting graded subalgebra (start = -1 is all of
W(1,1), start = 0 is the Borel b+).  Matrices act on coordinate columns.
"""

from __future__ import annotations

import itertools
import json
import math
import sys
from dataclasses import dataclass, field as dc_field
from typing import Any

import numpy as np

from . import gf
from .gf import ArtinSchreierField, ExtFieldElem, FieldElem, PrimeField
from .witt import Character, height


@dataclass
class Representation:
    p: int
    chi: Character
    field: Any  # PrimeField | ArtinSchreierField
    start: int
    mats: np.ndarray  # (p - 1 - start, dim, dim) [+ (p,) over the extension]
    weights: np.ndarray | None = None  # e_0-eigenvalue per basis vector, if known
    label: str = ""

    @property
    def dim(self) -> int:
        return self.mats.shape[1]

    @property
    def indices(self) -> range:
        return range(self.start, self.p - 1)

    def act(self, i: int) -> np.ndarray:
        if i < self.start:
            raise KeyError(f"e_{i} is not in the acting algebra g_{self.start}")
        return self.mats[i - self.start]

    def act_element(self, x: np.ndarray) -> np.ndarray:
        """Matrix of a general element x (coordinates over F_p in full W(1,1) indexing)."""
        x = np.asarray(x, dtype=np.int64) % self.p
        if x[: self.start + 1].any():
            raise ValueError("element lies outside the acting subalgebra")
        coeffs = x[self.start + 1 :]
        if isinstance(self.field, ArtinSchreierField):
            return np.einsum("k,kabs->abs", coeffs, self.mats) % self.p
        return np.einsum("k,kab->ab", coeffs, self.mats) % self.p

    def restrict(self, start: int, label: str | None = None) -> "Representation":
        if start < self.start:
            raise ValueError("can only restrict to a smaller graded subalgebra")
        return Representation(
            self.p, self.chi, self.field, start, self.mats[start - self.start :].copy(),
            None if self.weights is None else self.weights.copy(),
            self.label if label is None else label,
        )

    def change_basis(self, P: np.ndarray, label: str | None = None) -> "Representation":
        """Module on the basis given by the columns of P."""
        F = self.field
        Pinv = gf.inverse(F, P)
        mats = np.stack([F.matmul(F.matmul(Pinv, A), P) for A in self.mats])
        return Representation(self.p, self.chi, F, self.start, mats, None, self.label if label is None else label)

    def to_dict(self) -> dict:
        F = self.field
        def mat_out(A):
            if isinstance(F, ArtinSchreierField):
                return [[[int(c) for c in A[a, b]] for b in range(A.shape[1])] for a in range(A.shape[0])]
            return [[int(v) for v in row] for row in A]
        d = {
            "p": self.p,
            "chi": list(self.chi.values),
            "field": F.tag,
            "dim": self.dim,
            "algebra_start": self.start,
            "label": self.label,
            "matrices": {str(i): mat_out(self.act(i)) for i in self.indices},
            "weights": None if self.weights is None else [F.format_scalar(w) for w in self.weights],
        }
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "Representation":
        p = d["p"]
        F = ArtinSchreierField(p) if d["field"] == "Fp[xi]" else PrimeField(p)
        start = d.get("algebra_start", -1)
        mats = np.stack([np.array(d["matrices"][str(i)], dtype=np.int64) for i in range(start, p - 1)])
        w = d.get("weights")
        weights = None if w is None else np.array(w, dtype=np.int64)
        return cls(p, Character(tuple(d["chi"]), p), F, start, mats % p, weights, d.get("label", ""))

    @classmethod
    def from_json(cls, text: str) -> "Representation":
        return cls.from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# validation


@dataclass
class ValidationReport:
    ok: bool
    failures: list[str] = dc_field(default_factory=list)

    def __bool__(self):
        return self.ok

    @property
    def first(self) -> str | None:
        return self.failures[0] if self.failures else None


def validate(M: Representation, stop_at_first: bool = False) -> ValidationReport:
    """Check the bracket relations and x^p - x^[p] = chi(x)^p on basis elements."""
    F, p = M.field, M.p
    failures = []
    for i in M.indices:
        for j in M.indices:
            if j <= i:
                continue
            lhs = F.zeros(M.act(i).shape[:2]) if i + j > p - 2 else F.scale(j - i, M.act(i + j))
            Ai, Aj = M.act(i), M.act(j)
            rhs = F.sub(F.matmul(Ai, Aj), F.matmul(Aj, Ai))
            if not np.all(F.is_zero(F.sub(lhs, rhs))):
                failures.append(f"bracket relation fails for (e_{i}, e_{j})")
                if stop_at_first:
                    return ValidationReport(False, failures)
    for i in M.indices:
        Ai = M.act(i)
        lhs = F.matpow(Ai, p)
        if i == 0:
            lhs = F.sub(lhs, Ai)
        c = pow(M.chi[i], p, p)
        rhs = F.scale(c, F.eye(M.dim))
        if not np.all(F.is_zero(F.sub(lhs, rhs))):
            failures.append(f"p-power relation fails for e_{i}")
            if stop_at_first:
                return ValidationReport(False, failures)
    return ValidationReport(not failures, failures)


# ---------------------------------------------------------------------------
# explicit Verma-type modules


def _moduleaction(F, p: int, lam, ks, size: int) -> np.ndarray:
    """Matrices of e_k m_j = (j + k + 1 + (k + 1) lam) m_{j+k} on m_0..m_{size-1}.

    ``lam`` is an array scalar of the field; entries with j + k outside
    [0, size) are dropped.
    """
    mats = []
    for k in ks:
        A = F.zeros((size, size))
        for j in range(size):
            t = j + k
            if 0 <= t < size:
                A[t, j] = F.add(F.scalar(j + k + 1), F.scale(k + 1, lam))
        mats.append(A)
    return np.stack(mats)


def verma(p: int, lam: int) -> Representation:
    """Z+(lam) on the basis m_0, ..., m_{p-1}; m_{p-1} is a highest weight vector of weight lam."""
    F = PrimeField(p)
    lam = int(lam) % p
    mats = _moduleaction(F, p, F.scalar(lam), range(-1, p - 1), p)
    weights = np.array([(j + 1 + lam) % p for j in range(p)], dtype=np.int64)
    return Representation(p, Character.zero(p), F, -1, mats, weights, f"Z{lam}")


def trivial(p: int, start: int = -1, chi: Character | None = None) -> Representation:
    F = PrimeField(p)
    mats = np.zeros((p - 1 - start, 1, 1), dtype=np.int64)
    return Representation(p, chi or Character.zero(p), F, start, mats, np.zeros(1, dtype=np.int64), "L0")


def simple_restricted(p: int, lam: int) -> Representation:
    """L(lam) for chi = 0: Z+(lam) for 1 <= lam <= p-2, the trivial module for lam = 0,
    and the invariant span of m_0..m_{p-2} in Z+(0) for lam = p-1."""
    lam = int(lam) % p
    if lam == 0:
        return trivial(p)
    if lam == p - 1:
        Z = verma(p, 0)
        mats = Z.mats[:, : p - 1, : p - 1].copy()
        return Representation(p, Z.chi, Z.field, -1, mats, Z.weights[: p - 1].copy(), f"L{lam}")
    M = verma(p, lam)
    M.label = f"L{lam}"
    return M


def twisted_borel_module(p: int, lam: int) -> Representation:
    """The b+-module L(lam) (x) (-xi) used at height 1, over F_p[xi].

    e_0 m_j = (lam + j + 1) m_j and e_k m_j = (j + k + 1 + (k + 1)(lam + xi)) m_{j+k}.
    """
    K = ArtinSchreierField(p)
    lam = int(lam) % p
    shifted = K.asarray(K(lam) + K.xi)
    mats = _moduleaction(K, p, shifted, range(1, p - 1), p)
    e0 = K.zeros((p, p))
    for j in range(p):
        e0[j, j] = K.scalar(lam + j + 1)
    mats = np.concatenate([e0[None], mats])
    weights = np.array([(lam + j + 1) % p for j in range(p)], dtype=np.int64)
    weights = K.embed(weights)
    return Representation(p, Character.zero(p), K, 0, mats, weights, f"L{lam}(x)-xi")


# ---------------------------------------------------------------------------
# one-dimensional modules and induction


@dataclass
class OneDimRep:
    p: int
    chi: Character
    start: int
    psi: dict  # index -> FieldElem | ExtFieldElem
    field: Any

    def __call__(self, i: int):
        return self.psi.get(i, self.field(0))


def _check_one_dim(rep: OneDimRep) -> list[str]:
    p, F = rep.p, rep.field
    errs = []
    for i in range(rep.start, p - 1):
        for j in range(i + 1, p - 1):
            if i + j <= p - 2 and ((j - i) * rep(i + j)):
                errs.append(f"psi([e_{i}, e_{j}]) = {(j - i) * rep(i + j)} != 0")
    for i in range(rep.start, p - 1):
        lhs = rep(i) ** p - (rep(i) if i == 0 else F(0))
        if lhs != F(pow(rep.chi[i], p, p)):
            errs.append(f"psi(e_{i})^p - psi(e_{i}^[p]) != chi(e_{i})^p")
    return errs


def one_dim_rep(chi: Character, start: int, lam=None) -> OneDimRep:
    """The one-dimensional u(g_start, chi)-module.

    For start >= 1 it is unique: psi agrees with chi off [h, h] and vanishes on
    [h, h] = g_{2 start + 1}.  For start = 0 the weight ``lam`` of e_0 must be
    supplied (an int, or an ExtFieldElem when chi(e_0) != 0).
    """
    p = chi.p
    if start < 0:
        raise ValueError("g_-1 = W(1,1) is simple and has no one-dimensional modules with these relations")
    if start == 0:
        if lam is None:
            raise ValueError("the weight of e_0 must be given when e_0 is in the subalgebra")
        F = ArtinSchreierField(p) if isinstance(lam, ExtFieldElem) else PrimeField(p)
        psi = {0: F(lam)}
    else:
        F = PrimeField(p) if lam is None or not isinstance(lam, ExtFieldElem) else ArtinSchreierField(p)
        psi = {i: F(chi[i]) for i in range(start, min(2 * start, p - 2) + 1)}
    rep = OneDimRep(p, chi, start, psi, F)
    errs = _check_one_dim(rep)
    if errs:
        raise ValueError("no one-dimensional module of this shape: " + "; ".join(errs))
    return rep


class _Straightener:
    """Action of e_k on PBW monomials  e_{c_1}^{a_1} ... e_{c_m}^{a_m} (x) 1.

    The complement generators c_1 > c_2 > ... > c_m appear in descending
    index order.  Products are straightened recursively with
    e_k e_c w = e_c (e_k w) + [e_k, e_c] w, and e_c^p is rewritten as
    e_c^[p] + chi(e_c)^p whenever an exponent reaches p.
    """

    def __init__(self, chi: Character, sub_start: int, psi: OneDimRep, ambient_start: int):
        self.p = chi.p
        self.chi = chi
        self.F = psi.field
        self.h = sub_start
        self.psi = psi
        self.comp = list(range(sub_start - 1, ambient_start - 1, -1))
        self.pos = {c: t for t, c in enumerate(self.comp)}
        self.memo: dict = {}
        self.zero = self.F(0)
        self.one = self.F(1)

    def monomials(self) -> list[tuple]:
        return list(itertools.product(range(self.p), repeat=len(self.comp)))

    def act(self, k: int, mono: tuple) -> dict:
        key = (k, mono)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        out = self._act(k, mono)
        self.memo[key] = out
        return out

    def _act(self, k: int, mono: tuple) -> dict:
        p = self.p
        lead = next((t for t, a in enumerate(mono) if a), None)
        if lead is None:
            if k >= self.h:
                c = self.psi(k)
                return {mono: c} if c else {}
            m = list(mono)
            m[self.pos[k]] = 1
            return {tuple(m): self.one}
        c = self.comp[lead]
        if k < self.h and k >= c:
            t = self.pos[k]
            m = list(mono)
            if m[t] + 1 < p:
                m[t] += 1
                return {tuple(m): self.one}
            # e_k^p = e_k^[p] + chi(e_k)^p on the remaining monomial
            m[t] = 0
            rest = tuple(m)
            out: dict = {}
            chip = self.F(pow(self.chi[k], p, p))
            if chip:
                out[rest] = chip
            if k == 0:
                _accumulate(out, self.act(0, rest), self.one)
            return _prune(out)
        # e_k e_c w' = e_c (e_k w') + (c - k) e_{k+c} w'
        m = list(mono)
        m[lead] -= 1
        rest = tuple(m)
        out = {}
        for m2, a in self.act(k, rest).items():
            _accumulate(out, self.act(c, m2), a)
        coef = (c - k) % p
        if coef and -1 <= k + c <= p - 2:
            _accumulate(out, self.act(k + c, rest), self.F(coef))
        return _prune(out)


def _accumulate(out: dict, terms: dict, scale) -> None:
    for m, b in terms.items():
        v = out.get(m)
        out[m] = b * scale if v is None else v + b * scale


def _prune(d: dict) -> dict:
    return {m: c for m, c in d.items() if c}


def induce(chi: Character, sub_start: int, psi: OneDimRep, ambient_start: int = -1, label: str = "") -> Representation:
    """u(g_ambient, chi) (x)_{u(g_sub, chi)} psi on its PBW basis.

    The basis is ordered by ``itertools.product`` over exponent tuples of the
    complement generators e_{sub-1}, ..., e_{ambient} (descending index).
    """
    p = chi.p
    if not ambient_start <= sub_start <= p - 2:
        raise ValueError("need ambient_start <= sub_start <= p-2 (the subalgebra must contain e_{p-2})")
    if psi.start != sub_start or psi.chi != chi:
        raise ValueError("one-dimensional module does not match the inducing subalgebra")
    errs = _check_one_dim(psi)
    if errs:
        raise ValueError("invalid one-dimensional module: " + "; ".join(errs))
    F = psi.field
    eng = _Straightener(chi, sub_start, psi, ambient_start)
    basis = eng.monomials()
    where = {m: n for n, m in enumerate(basis)}
    dim = len(basis)
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 20000))
    try:
        mats = []
        for k in range(ambient_start, p - 1):
            A = F.zeros((dim, dim))
            for col, mono in enumerate(basis):
                for m, c in eng.act(k, mono).items():
                    A[where[m], col] = F.asarray(c)
            mats.append(A)
    finally:
        sys.setrecursionlimit(old)
    mats = np.stack(mats)
    weights = None
    if sub_start <= 0:
        # PBW monomials are e_0-eigenvectors when e_0 lies in the subalgebra
        lam = psi(0)
        weights = np.stack([F.asarray(lam - sum(a * c for a, c in zip(m, eng.comp))) for m in basis])
    return Representation(p, chi, F, ambient_start, mats, weights, label)


def moduleaction_basis(field, p: int) -> np.ndarray:
    """Columns m_j = -j! e_-1^(p-1-j) (x) 1 in the PBW basis of an induction from b+.

    In this basis the induced module has e_-1 m_j = j m_{j-1}, matching the
    explicit Verma formula.
    """
    P = field.zeros((p, p))
    for j in range(p):
        P[p - 1 - j, j] = field.scalar(-math.factorial(j))
    return P


def induce_from_borel(chi: Character, lam, label: str = "") -> Representation:
    """u(g, chi) (x)_{u(b+, chi)} lam, rewritten on the basis m_0..m_{p-1}."""
    p = chi.p
    psi = one_dim_rep(chi, 0, lam)
    M = induce(chi, 0, psi, -1)
    F = M.field
    P = moduleaction_basis(F, p)
    N = M.change_basis(P, label)
    N.weights = M.weights[::-1].copy()
    return N


def simple_height0(p: int, lam: int, allow_redundant: bool = False) -> Representation:
    """L(lam) for chi(e_-1) = 1: induced from the weight lam of b+, 0 <= lam <= p-2.

    lam = p-1 gives a module isomorphic to L(0); pass allow_redundant to build it.
    """
    top = p - 1 if allow_redundant else p - 2
    if not 0 <= lam <= top:
        raise ValueError(f"height-0 simples are labelled 0..{p - 2}, got {lam}")
    chi = Character((1,) + (0,) * (p - 1), p)
    return induce_from_borel(chi, lam, f"L{lam}")


def simple_height1(p: int, lam: int) -> Representation:
    """L(lam) for chi(e_0) = 1, induced from the weight lam + xi of b+ (over F_p[xi])."""
    if not 0 <= lam <= p - 1:
        raise ValueError(f"height-1 simples are labelled 0..{p - 1}, got {lam}")
    K = ArtinSchreierField(p)
    chi = Character((0, 1) + (0,) * (p - 2), p)
    return induce_from_borel(chi, K(lam) + K.xi, f"L{lam}")


def dual(M: Representation) -> Representation:
    F = M.field
    mats = np.stack([F.neg(F.transpose(A)) for A in M.mats])
    weights = None if M.weights is None else F.neg(M.weights)
    return Representation(M.p, -M.chi, F, M.start, mats, weights, f"{M.label}*")


# ---------------------------------------------------------------------------
# weights and simplicity


def _is_diagonal(F, A) -> bool:
    n = A.shape[0]
    off = ~np.eye(n, dtype=bool)
    return bool(np.all(F.is_zero(A[off])))


def _weight_key(F, w) -> Any:
    return int(w) if isinstance(F, PrimeField) else tuple(int(c) for c in w)


def weight_spaces(M: Representation) -> dict:
    """e_0-eigenspaces: weight key -> matrix whose columns span the eigenspace.

    Weight keys are ints over F_p and coefficient tuples over the extension.
    """
    if M.start > 0:
        raise ValueError("e_0 does not act on this module")
    F = M.field
    A = M.act(0)
    n = M.dim
    if _is_diagonal(F, A):
        groups: dict = {}
        for j in range(n):
            groups.setdefault(_weight_key(F, A[j, j]), []).append(j)
        out = {}
        for w, idx in groups.items():
            B = F.zeros((n, len(idx)))
            for t, j in enumerate(idx):
                B[j, t] = F.scalar(1)
            out[w] = B
        return out
    c0 = M.chi[0]
    if isinstance(F, PrimeField):
        if c0:
            raise ValueError("e_0 is not diagonalizable over F_p when chi(e_0) != 0")
        cands = [F.scalar(a) for a in range(M.p)]
    else:
        cands = [F.asarray(F(a) + F.xi * c0) for a in range(M.p)]
    out = {}
    total = 0
    for a in cands:
        Ka = gf.kernel_basis(F, F.sub(A, F.mul(F.eye(n), a)))
        if Ka.shape[0]:
            out[_weight_key(F, a)] = np.swapaxes(Ka, 0, 1)
            total += Ka.shape[0]
    if total != n:
        raise ValueError("e_0 is not diagonalizable on this module")
    return out


def weight_basis(M: Representation) -> tuple[np.ndarray, np.ndarray]:
    """Change-of-basis matrix to an e_0-eigenbasis and the weight of each new basis vector."""
    F = M.field
    spaces = weight_spaces(M)
    cols, labels = [], []
    for w in sorted(spaces):
        B = spaces[w]
        for t in range(B.shape[1]):
            cols.append(B[:, t])
            labels.append(F.scalar(w) if isinstance(F, PrimeField) else F.asarray(np.array(w)))
    return np.stack(cols, axis=1), np.stack(labels)


def spin(M: Representation, v: np.ndarray) -> int:
    """Dimension of the submodule generated by v."""
    F = M.field
    basis = [np.asarray(v, dtype=np.int64)]
    r = gf.rank(F, np.stack(basis))
    frontier = list(basis)
    while frontier:
        new = []
        for w in frontier:
            for A in M.mats:
                u = F.matmul(A, w[:, None] if w.ndim == 1 else w[:, None, :])
                u = u[:, 0]
                cand = np.stack(basis + [u])
                rr = gf.rank(F, cand)
                if rr > r:
                    basis.append(u)
                    new.append(u)
                    r = rr
        frontier = new
    return r


def is_simple(M: Representation) -> bool:
    """Simplicity test for modules whose e_0-weights are multiplicity free.

    Every submodule is then spanned by weight vectors, so the module is simple
    iff each weight vector generates everything.
    """
    spaces = weight_spaces(M)
    if any(B.shape[1] > 1 for B in spaces.values()):
        raise ValueError("is_simple needs multiplicity-free e_0-weights")
    return all(spin(M, B[:, 0]) == M.dim for B in spaces.values())


def chi_height(M: Representation) -> int:
    return height(M.chi)


def build_module(p: int, r: int, label: str) -> Representation:
    """Module by CLI-style label: 'Z<lam>' (Verma, height -1) or 'L<lam>'."""
    kind, rest = label[:1], label[1:]
    try:
        lam = int(rest)
    except ValueError:
        raise ValueError(f"bad module label {label!r}") from None
    if kind == "Z" and r == -1 and 0 <= lam < p:
        return verma(p, lam)
    if kind == "L":
        if r == -1 and 0 <= lam < p:
            return simple_restricted(p, lam)
        if r == 0:
            return simple_height0(p, lam)
        if r == 1:
            return simple_height1(p, lam)
    raise ValueError(f"no module {label!r} at height {r} for p={p}")


__all__ = [
    "Representation", "ValidationReport", "OneDimRep", "validate", "verma", "trivial",
    "simple_restricted", "twisted_borel_module", "one_dim_rep", "induce", "induce_from_borel",
    "moduleaction_basis", "simple_height0", "simple_height1", "dual", "weight_spaces",
    "weight_basis", "spin", "is_simple", "build_module", "FieldElem",
]

