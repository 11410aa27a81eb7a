"""The restricted Witt algebra W(1,1) over F_p.

Basis vectors are indexed -1, ..., p-2 externally; internally coordinate
vectors are numpy arrays of length p whose slot ``i + 1`` holds the
coefficient of ``e_i``.  Lie elements are plain int64 arrays.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .gf import PrimeField, is_prime, kernel_basis, rank, rref, solve

LieElement = np.ndarray


@dataclass(frozen=True)
class Character:
    """A linear functional on W(1,1), stored by its values chi(e_-1) ... chi(e_{p-2})."""

    values: tuple
    p: int

    def __post_init__(self):
        vals = tuple(int(v) % self.p for v in self.values)
        if len(vals) != self.p:
            raise ValueError(f"a character for p={self.p} needs {self.p} values, got {len(vals)}")
        object.__setattr__(self, "values", vals)

    @classmethod
    def zero(cls, p: int) -> "Character":
        return cls((0,) * p, p)

    @classmethod
    def from_json(cls, text: str, p: int | None = None) -> "Character":
        vals = json.loads(text) if isinstance(text, str) else list(text)
        if p is None:
            p = len(vals)
        return cls(tuple(vals), p)

    def to_json(self) -> str:
        return json.dumps(list(self.values))

    def __getitem__(self, i: int) -> int:
        """chi(e_i) for a basis index i in -1..p-2."""
        return self.values[i + 1]

    def __call__(self, x: LieElement) -> int:
        return int(np.dot(self.as_array(), np.asarray(x) % self.p)) % self.p

    def as_array(self) -> np.ndarray:
        return np.array(self.values, dtype=np.int64)

    def __neg__(self) -> "Character":
        return Character(tuple(-v for v in self.values), self.p)

    def is_zero(self) -> bool:
        return not any(self.values)


class WittAlgebra:
    def __init__(self, p: int):
        if not is_prime(p) or p < 5:
            raise ValueError(f"W(1,1) is handled for primes p >= 5, got {p}")
        self.p = p
        self.field = PrimeField(p)

    def __repr__(self):
        return f"WittAlgebra({self.p})"

    @property
    def dim(self) -> int:
        return self.p

    @property
    def indices(self) -> range:
        return range(-1, self.p - 1)

    def e(self, i: int) -> LieElement:
        if not -1 <= i <= self.p - 2:
            raise IndexError(f"e_{i} is not a basis vector for p={self.p}")
        v = np.zeros(self.p, dtype=np.int64)
        v[i + 1] = 1
        return v

    def element(self, coeffs: dict[int, int]) -> LieElement:
        v = np.zeros(self.p, dtype=np.int64)
        for i, c in coeffs.items():
            v[i + 1] = c % self.p
        return v

    @cached_property
    def structure(self) -> np.ndarray:
        """C[a, b, c]: coefficient of e_c in [e_a, e_b], internal offsets."""
        p = self.p
        C = np.zeros((p, p, p), dtype=np.int64)
        for i in self.indices:
            for j in self.indices:
                if -1 <= i + j <= p - 2:
                    C[i + 1, j + 1, i + j + 1] = (j - i) % p
        return C

    def bracket(self, x: LieElement, y: LieElement) -> LieElement:
        return np.einsum("a,b,abc->c", np.asarray(x), np.asarray(y), self.structure) % self.p

    def ad(self, x: LieElement) -> np.ndarray:
        """Matrix of ad(x) acting on coordinate columns."""
        return np.einsum("a,abc->cb", np.asarray(x), self.structure) % self.p

    @cached_property
    def _ad_basis(self) -> np.ndarray:
        # column a is vec(ad(e_a))
        return np.stack([self.ad(self.e(i)).reshape(-1) for i in self.indices], axis=1)

    def p_power(self, x: LieElement) -> LieElement:
        """x^[p], the unique y with ad(y) = ad(x)^p (W(1,1) has trivial center)."""
        target = self.field.matpow(self.ad(x), self.p).reshape(-1)
        y = solve(self.field, self._ad_basis, target)
        if y is None:
            raise AssertionError("ad(x)^p is not inner; the algebra is not restricted")
        return y

    def jacobi_defect(self) -> list[tuple[int, int, int]]:
        bad = []
        for i in self.indices:
            for j in self.indices:
                for k in self.indices:
                    a, b, c = self.e(i), self.e(j), self.e(k)
                    s = (
                        self.bracket(a, self.bracket(b, c))
                        + self.bracket(b, self.bracket(c, a))
                        + self.bracket(c, self.bracket(a, b))
                    ) % self.p
                    if s.any():
                        bad.append((i, j, k))
        return bad

    def graded(self, start: int) -> np.ndarray:
        """Basis rows of g_start = span{e_start, ..., e_{p-2}}."""
        return np.stack([self.e(i) for i in range(start, self.p - 1)]) if start <= self.p - 2 else np.zeros((0, self.p), dtype=np.int64)

    def random_element(self, rng: np.random.Generator, start: int = -1) -> LieElement:
        x = rng.integers(0, self.p, size=self.p, dtype=np.int64)
        x[: start + 1] = 0
        return x

    # -- subspaces ---------------------------------------------------------

    def is_subalgebra(self, basis: np.ndarray) -> bool:
        basis = np.asarray(basis, dtype=np.int64)
        prods = [self.bracket(x, y) for x in basis for y in basis]
        return not prods or _in_span(basis, np.array(prods), self.field)

    def is_ideal(self, ideal: np.ndarray, ambient: np.ndarray) -> bool:
        prods = [self.bracket(x, y) for x in ambient for y in ideal]
        return not prods or _in_span(np.asarray(ideal), np.array(prods), self.field)


def _in_span(basis: np.ndarray, vectors: np.ndarray, field) -> bool:
    if basis.shape[0] == 0:
        return not np.asarray(vectors).any()
    return rank(field, np.vstack([basis, vectors])) == rank(field, basis)


@lru_cache(maxsize=None)
def witt(p: int) -> WittAlgebra:
    return WittAlgebra(p)


# ---------------------------------------------------------------------------
# characters


def height(chi: Character) -> int:
    p = chi.p
    if chi[p - 2] != 0:
        return p - 1
    for i in range(-1, p - 1):
        if all(chi[j] == 0 for j in range(i, p - 1)):
            return i
    return p - 1  # unreachable: chi(e_{p-2}) == 0 makes i = p-2 qualify


def representative(p: int, r: int) -> Character:
    """Standard character of height r (one per conjugacy class where that is unique)."""
    vals = [0] * p
    if r == -1:
        pass
    elif r == 0:
        vals[0] = 1  # chi(e_-1) = 1
    elif r == 1:
        vals[1] = 1  # chi(e_0) = 1
    elif r == p - 1:
        vals[p - 1] = 1  # chi(e_{p-2}) = 1
    elif 1 < r < p - 1 and r % 2 == 0:
        vals[r] = 1  # chi(e_{r-1}) = 1
    elif 1 < r < p - 1:
        raise ValueError(
            f"height {r} is odd: there are infinitely many conjugacy classes; supply chi explicitly"
        )
    else:
        raise ValueError(f"no character of height {r} for p={p}")
    return Character(tuple(vals), p)


def default_character(p: int, r: int) -> Character:
    """Like ``representative`` but also offers chi(e_{r-1}) = 1 for odd middle heights."""
    if 1 < r < p - 1 and r % 2 == 1:
        vals = [0] * p
        vals[r] = 1
        return Character(tuple(vals), p)
    return representative(p, r)


def beta_gram(chi: Character, start: int = -1) -> np.ndarray:
    """Gram matrix of beta_chi(x, y) = chi([x, y]) on g_start."""
    W = witt(chi.p)
    idx = list(range(start, chi.p - 1))
    G = np.zeros((len(idx), len(idx)), dtype=np.int64)
    for a, i in enumerate(idx):
        for b, j in enumerate(idx):
            G[a, b] = chi(W.bracket(W.e(i), W.e(j)))
    return G


def beta_radical(chi: Character, start: int = 0) -> tuple[np.ndarray, bool]:
    """Radical of beta_chi on g_start, as basis rows in full coordinates, and whether it is an ideal."""
    W = witt(chi.p)
    G = beta_gram(chi, start)
    K = kernel_basis(W.field, G)
    basis = np.zeros((K.shape[0], chi.p), dtype=np.int64)
    basis[:, start + 1 :] = K
    ambient = W.graded(start)
    return basis, W.is_ideal(basis, ambient) if basis.shape[0] else True


def centralizer(chi: Character) -> np.ndarray:
    """g^chi = {x : chi([x, g]) = 0}, as basis rows."""
    W = witt(chi.p)
    return kernel_basis(W.field, beta_gram(chi, -1))


# ---------------------------------------------------------------------------
# restricted subalgebras


@dataclass
class Classification:
    verdict: str  # "torus" | "p-nilpotent" | "mixed"
    diagnostic: str = ""


def _p_orbit(W: WittAlgebra, x: LieElement, steps: int) -> list[LieElement]:
    out = []
    y = x
    for _ in range(steps):
        y = W.p_power(y)
        out.append(y)
    return out


def classify_restricted(p: int, basis: Sequence[LieElement]) -> Classification:
    """Decide whether span(basis) is a torus, p-nilpotent, or neither.

    p-nilpotence is tested with Engel's flag: the chain V, ad(h)V, ad(h)^2 V, ...
    on g must reach 0.  Since W(1,1) is centerless, ad is faithful and
    ad(x)^p = ad(x^[p]), so this is equivalent to every element of h being
    p-nilpotent.  A torus must be abelian and every basis vector must lie in
    the span of its own p-power iterates.
    """
    W = witt(p)
    F = W.field
    h = np.array(basis, dtype=np.int64).reshape(-1, p) % p
    if h.shape[0] == 0:
        return Classification("p-nilpotent", "zero subspace")
    h = _independent_rows(F, h)
    if not W.is_subalgebra(h):
        return Classification("mixed", "not closed under the bracket")
    powers = np.array([W.p_power(x) for x in h])
    if not _in_span(h, powers, F):
        return Classification("mixed", "not closed under the p-map")

    V = np.eye(p, dtype=np.int64)
    ads = [W.ad(x) for x in h]
    for _ in range(p + 1):
        imgs = np.vstack([(A @ V.T).T % p for A in ads])
        r = rank(F, imgs)
        if r == 0:
            return Classification("p-nilpotent", "Engel flag reaches 0")
        if r >= V.shape[0]:
            break
        V = _independent_rows(F, imgs)

    abelian = all(not W.bracket(x, y).any() for x in h for y in h)
    if abelian:
        semisimple = all(_in_span(np.array(_p_orbit(W, x, h.shape[0] + 1)), x[None, :], F) for x in h)
        if semisimple:
            return Classification("torus", "abelian, spanned by p-semisimple elements")
        return Classification("mixed", "abelian but contains elements that are not semisimple")
    return Classification("mixed", "neither abelian-semisimple nor p-nilpotent")


def _independent_rows(F: PrimeField, M: np.ndarray) -> np.ndarray:
    R, _ = rref(M, F.p)
    return R
