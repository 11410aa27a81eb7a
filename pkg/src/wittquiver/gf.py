"""Exact arithmetic over F_p and the Artin-Schreier extension F_p[xi]/(xi^p - xi - 1).

Scalars come in two flavours:

* ``FieldElem`` / ``ExtFieldElem`` -- small immutable value objects with the
  usual operators, used where readability matters more than speed.
* numpy ``int64`` arrays, used by every matrix computation.  A prime-field
  array has the natural shape; an extension-field array carries one trailing
  axis of length ``p`` holding the coefficients of ``1, xi, ..., xi^(p-1)``.

All elimination happens over F_p.  A linear system over the extension is
solved by replacing each scalar with its ``p x p`` multiplication matrix, so
the F_p-nullity of the expanded system is ``p`` times the nullity over the
extension.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np


class FieldError(ArithmeticError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


# ---------------------------------------------------------------------------
# scalar value types


@dataclass(frozen=True)
class FieldElem:
    value: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.p)

    def _coerce(self, other) -> "FieldElem":
        if isinstance(other, FieldElem):
            if other.p != self.p:
                raise FieldError(f"modulus mismatch: {self.p} vs {other.p}")
            return other
        if isinstance(other, (int, np.integer)):
            return FieldElem(int(other), self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.value + o.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.value - o.value, self.p)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.value * o.value, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(-self.value, self.p)

    def __truediv__(self, other):
        return self * self._coerce(other).inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        return FieldElem(pow(self.value, n, self.p), self.p)

    def inv(self) -> "FieldElem":
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.p}")
        return FieldElem(pow(self.value, -1, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            return self.value == int(other) % self.p
        if isinstance(other, FieldElem):
            return self.p == other.p and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


def _poly_mulmod(a: Sequence[int], b: Sequence[int], p: int) -> tuple[int, ...]:
    raw = [0] * (2 * p - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                raw[i + j] += ai * bj
    # xi^(p+m) = xi^(m+1) + xi^m
    for d in range(2 * p - 2, p - 1, -1):
        c = raw[d]
        if c:
            raw[d - p + 1] += c
            raw[d - p] += c
    return tuple(x % p for x in raw[:p])


@dataclass(frozen=True)
class ExtFieldElem:
    """Residue class of a polynomial in xi modulo xi^p - xi - 1."""

    coeffs: tuple
    p: int

    def __post_init__(self):
        c = tuple(int(x) % self.p for x in self.coeffs)
        if len(c) > self.p:
            raise FieldError("coefficient vector longer than p")
        object.__setattr__(self, "coeffs", c + (0,) * (self.p - len(c)))

    @classmethod
    def scalar(cls, c: int, p: int) -> "ExtFieldElem":
        return cls((c,), p)

    @classmethod
    def xi(cls, p: int) -> "ExtFieldElem":
        return cls((0, 1), p)

    def _coerce(self, other) -> "ExtFieldElem":
        if isinstance(other, ExtFieldElem):
            if other.p != self.p:
                raise FieldError(f"characteristic mismatch: {self.p} vs {other.p}")
            return other
        if isinstance(other, FieldElem):
            if other.p != self.p:
                raise FieldError(f"characteristic mismatch: {self.p} vs {other.p}")
            return ExtFieldElem.scalar(other.value, self.p)
        if isinstance(other, (int, np.integer)):
            return ExtFieldElem.scalar(int(other), self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ExtFieldElem(tuple(a + b for a, b in zip(self.coeffs, o.coeffs)), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ExtFieldElem(tuple(a - b for a, b in zip(self.coeffs, o.coeffs)), self.p)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return ExtFieldElem(tuple(-a for a in self.coeffs), self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ExtFieldElem(_poly_mulmod(self.coeffs, o.coeffs, self.p), self.p)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        result = ExtFieldElem.scalar(1, self.p)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        return self * self._coerce(other).inv()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def inv(self) -> "ExtFieldElem":
        if self.is_zero():
            raise ZeroDivisionError("0 has no inverse in the extension field")
        # multiplicative group has order p^p - 1
        return self ** (self.p ** self.p - 2)

    def frobenius(self) -> "ExtFieldElem":
        return self ** self.p

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.p))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                mono = "" if i == 0 else ("xi" if i == 1 else f"xi^{i}")
                if not mono:
                    terms.append(str(c))
                else:
                    terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# F_p elimination kernel


def rref(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_p.

    Pivots are taken in the leftmost available column, from the topmost
    available row, so the output depends only on the input matrix.
    Returns the nonzero rows and the pivot column list.
    """
    A = np.array(A, dtype=np.int64) % p
    if A.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    A = A[np.any(A != 0, axis=1)]
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), -1, p)
        if inv != 1:
            A[r, c:] = (A[r, c:] * inv) % p
        f = A[:, c].copy()
        f[r] = 0
        idx = np.flatnonzero(f)
        if idx.size:
            A[idx, c:] = (A[idx, c:] - np.outer(f[idx], A[r, c:])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def _kernel_from_rref(R: np.ndarray, pivots: list[int], cols: int, p: int) -> np.ndarray:
    free = [c for c in range(cols) if c not in set(pivots)]
    K = np.zeros((len(free), cols), dtype=np.int64)
    for t, f in enumerate(free):
        K[t, f] = 1
        for i, c in enumerate(pivots):
            K[t, c] = (-R[i, f]) % p
    return K


# ---------------------------------------------------------------------------
# field objects (array-level arithmetic)


class PrimeField:
    """F_p with array arithmetic on int64 numpy arrays."""

    degree = 1
    tag = "Fp"

    def __init__(self, p: int):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return type(other) is PrimeField and other.p == self.p

    def __hash__(self):
        return hash(("Fp", self.p))

    @property
    def elem_shape(self) -> tuple:
        return ()

    def __call__(self, v) -> FieldElem:
        if isinstance(v, FieldElem):
            return v
        return FieldElem(int(v), self.p)

    def asarray(self, a) -> np.ndarray:
        if isinstance(a, FieldElem):
            return np.array(a.value, dtype=np.int64)
        a = np.asarray(a)
        if a.dtype == object:
            a = np.vectorize(int, otypes=[np.int64])(a)
        return np.asarray(a, dtype=np.int64) % self.p

    def scalar(self, v) -> np.ndarray:
        return self.asarray(int(v) if not isinstance(v, FieldElem) else v.value)

    def to_elem(self, a) -> FieldElem:
        return FieldElem(int(a), self.p)

    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (np.asarray(a) * np.asarray(b)) % self.p

    def scale(self, c: int, a):
        return (int(c) * a) % self.p

    def matmul(self, A, B):
        return (np.asarray(A) @ np.asarray(B)) % self.p

    def matpow(self, A, n: int):
        result = self.eye(A.shape[0])
        base = A % self.p
        while n:
            if n & 1:
                result = self.matmul(result, base)
            base = self.matmul(base, base)
            n >>= 1
        return result

    def is_zero(self, a) -> np.ndarray:
        return np.asarray(a) % self.p == 0

    def transpose(self, A):
        return np.swapaxes(A, 0, 1)

    def expand(self, A: np.ndarray) -> np.ndarray:
        return np.asarray(A, dtype=np.int64) % self.p

    def contract_vectors(self, V: np.ndarray) -> np.ndarray:
        return V

    def random(self, rng: np.random.Generator, shape) -> np.ndarray:
        return rng.integers(0, self.p, size=shape, dtype=np.int64)

    def format_scalar(self, a):
        return int(a)

    def parse_scalar(self, obj):
        return self.asarray(int(obj))


class ArtinSchreierField:
    """F_p[xi]/(xi^p - xi - 1), a field with p^p elements.

    The constructor runs a cheap irreducibility self-check: ``x^p - x - 1``
    has no root in F_p and the Frobenius orbit of ``xi`` has length ``p``.
    """

    tag = "Fp[xi]"

    def __init__(self, p: int):
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.degree = p
        self._self_check()

    def __repr__(self):
        return f"ArtinSchreierField({self.p})"

    def __eq__(self, other):
        return type(other) is ArtinSchreierField and other.p == self.p

    def __hash__(self):
        return hash(("Fp[xi]", self.p))

    def _self_check(self):
        p = self.p
        if any((pow(c, p, p) - c - 1) % p == 0 for c in range(p)):
            raise FieldError("x^p - x - 1 has a root in F_p")
        xi = ExtFieldElem.xi(p)
        y = xi
        for k in range(1, p):
            y = y.frobenius()
            if y == xi:
                raise FieldError(f"Frobenius orbit of xi has length {k}")
        if y.frobenius() != xi:
            raise FieldError("xi is not fixed by the p-th Frobenius power")

    @property
    def elem_shape(self) -> tuple:
        return (self.p,)

    @property
    def xi(self) -> ExtFieldElem:
        return ExtFieldElem.xi(self.p)

    def __call__(self, v) -> ExtFieldElem:
        if isinstance(v, ExtFieldElem):
            return v
        if isinstance(v, FieldElem):
            return ExtFieldElem.scalar(v.value, self.p)
        if isinstance(v, (int, np.integer)):
            return ExtFieldElem.scalar(int(v), self.p)
        return ExtFieldElem(tuple(int(x) for x in v), self.p)

    def asarray(self, a) -> np.ndarray:
        if isinstance(a, ExtFieldElem):
            return np.array(a.coeffs, dtype=np.int64)
        a = np.asarray(a)
        if a.dtype == object:
            flat = [self(x).coeffs for x in a.ravel()]
            return np.array(flat, dtype=np.int64).reshape(a.shape + (self.p,))
        return np.asarray(a, dtype=np.int64) % self.p

    def scalar(self, v) -> np.ndarray:
        return self.asarray(self(v))

    def to_elem(self, a) -> ExtFieldElem:
        return ExtFieldElem(tuple(int(x) for x in a), self.p)

    def embed(self, a) -> np.ndarray:
        """Lift an F_p array into the extension (constant coefficients)."""
        a = np.asarray(a, dtype=np.int64) % self.p
        out = np.zeros(a.shape + (self.p,), dtype=np.int64)
        out[..., 0] = a
        return out

    def zeros(self, shape) -> np.ndarray:
        shape = (shape,) if isinstance(shape, int) else tuple(shape)
        return np.zeros(shape + (self.p,), dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        return self.embed(np.eye(n, dtype=np.int64))

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def scale(self, c: int, a):
        return (int(c) * a) % self.p

    def _reduce(self, raw: np.ndarray) -> np.ndarray:
        p = self.p
        raw = raw.copy()
        for d in range(2 * p - 2, p - 1, -1):
            c = raw[..., d]
            raw[..., d - p + 1] += c
            raw[..., d - p] += c
        return raw[..., :p] % p

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        p = self.p
        shape = np.broadcast_shapes(a.shape[:-1], b.shape[:-1])
        raw = np.zeros(shape + (2 * p - 1,), dtype=np.int64)
        for i in range(p):
            ai = a[..., i : i + 1]
            if np.any(ai):
                raw[..., i : i + p] += ai * b
        return self._reduce(raw)

    def matmul(self, A, B):
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        p = self.p
        out_shape = (A[..., 0] @ B[..., 0]).shape
        raw = np.zeros(out_shape + (2 * p - 1,), dtype=np.int64)
        nzA = [i for i in range(p) if np.any(A[..., i])]
        nzB = [j for j in range(p) if np.any(B[..., j])]
        for i in nzA:
            Ai = A[..., i]
            for j in nzB:
                raw[..., i + j] += Ai @ B[..., j]
            raw %= p
        return self._reduce(raw)

    def matpow(self, A, n: int):
        result = self.eye(A.shape[0])
        base = A % self.p
        while n:
            if n & 1:
                result = self.matmul(result, base)
            base = self.matmul(base, base)
            n >>= 1
        return result

    def is_zero(self, a) -> np.ndarray:
        return np.all(np.asarray(a) % self.p == 0, axis=-1)

    def transpose(self, A):
        return np.swapaxes(A, 0, 1)

    @cached_property
    def _xi_powers(self) -> np.ndarray:
        """Stack X[s] = matrix of multiplication by xi^s, acting on coefficient columns."""
        p = self.p
        X = np.zeros((p, p), dtype=np.int64)
        for t in range(p - 1):
            X[t + 1, t] = 1
        X[0, p - 1] = 1
        X[1, p - 1] = 1
        out = [np.eye(p, dtype=np.int64)]
        for _ in range(p - 1):
            out.append((X @ out[-1]) % p)
        return np.stack(out)

    def mult_matrix(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return np.einsum("...s,sab->...ab", a, self._xi_powers) % self.p

    def expand(self, A: np.ndarray) -> np.ndarray:
        """Restriction of scalars: (m, n, p) extension matrix -> (m p, n p) over F_p."""
        A = np.asarray(A, dtype=np.int64)
        m, n = A.shape[:2]
        M = self.mult_matrix(A)  # (m, n, p, p)
        return M.transpose(0, 2, 1, 3).reshape(m * self.p, n * self.p)

    def contract_vectors(self, V: np.ndarray) -> np.ndarray:
        """Reinterpret F_p vectors of length n p as extension vectors (k, n, p)."""
        V = np.asarray(V, dtype=np.int64)
        return V.reshape(V.shape[0], -1, self.p)

    def random(self, rng: np.random.Generator, shape) -> np.ndarray:
        shape = (shape,) if isinstance(shape, int) else tuple(shape)
        return rng.integers(0, self.p, size=shape + (self.p,), dtype=np.int64)

    def format_scalar(self, a):
        return [int(x) for x in a]

    def parse_scalar(self, obj):
        if isinstance(obj, int):
            return self.scalar(obj)
        return self.asarray(np.array(obj, dtype=np.int64))


Field = PrimeField | ArtinSchreierField


def field_for(p: int, extension: bool = False) -> Field:
    return ArtinSchreierField(p) if extension else PrimeField(p)


# ---------------------------------------------------------------------------
# linear algebra over either field


def _as_fp(field: Field, A: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    if isinstance(field, ArtinSchreierField):
        if A.ndim != 3:
            raise ValueError("extension matrix must have shape (rows, cols, p)")
        if A.shape[0] == 0:
            return np.zeros((0, A.shape[1] * field.p), dtype=np.int64)
        return field.expand(A)
    if A.ndim != 2:
        raise ValueError("matrix must be 2-d")
    return A % field.p


def rank(field: Field, A: np.ndarray) -> int:
    """Rank over the field (extension ranks are F_p ranks divided by p)."""
    A = np.asarray(A)
    if A.size == 0:
        return 0
    _, piv = rref(_as_fp(field, A), field.p)
    return len(piv) // field.degree


def nullity(field: Field, A: np.ndarray) -> int:
    return np.asarray(A).shape[1] - rank(field, A)


def kernel_basis(field: Field, A: np.ndarray, ncols: int | None = None) -> np.ndarray:
    """Basis of the right null space of A, one vector per row.

    For an extension-field matrix the result has shape (k, n, p) and is a
    basis over the extension.
    """
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[1] if A.ndim >= 2 else ncols
    if ncols is not None:
        n = ncols
    if A.shape[0] == 0:
        Fp_A = np.zeros((0, n * field.degree), dtype=np.int64)
    else:
        Fp_A = _as_fp(field, A)
    R, piv = rref(Fp_A, field.p)
    K = _kernel_from_rref(R, piv, n * field.degree, field.p)
    if isinstance(field, PrimeField):
        return K
    return _extension_basis(field, K, n)


def _extension_basis(field: ArtinSchreierField, K: np.ndarray, n: int) -> np.ndarray:
    """Pick an extension-field basis out of an xi-stable F_p spanning set."""
    p = field.p
    chosen = []
    span = np.zeros((0, n * p), dtype=np.int64)
    target = K.shape[0]
    for v in K:
        if span.shape[0] == target:
            break
        w = v.reshape(n, p)
        orbit = np.stack([field.mul(w, field.asarray(ExtFieldElem(((0,) * s) + (1,), p))).reshape(-1) for s in range(p)])
        trial = np.vstack([span, orbit])
        R, piv = rref(trial, p)
        if len(piv) > span.shape[0]:
            chosen.append(w)
            span = R
    if not chosen:
        return np.zeros((0, n, p), dtype=np.int64)
    return np.stack(chosen)


def solve(field: Field, A: np.ndarray, b: np.ndarray) -> np.ndarray | None:
    """One solution of A x = b, or None if the system is inconsistent."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    n = A.shape[1]
    Fp_A = _as_fp(field, A)
    Fp_b = b.reshape(-1) % field.p
    aug = np.hstack([Fp_A, Fp_b[:, None]])
    R, piv = rref(aug, field.p)
    ncols = n * field.degree
    if piv and piv[-1] == ncols:
        return None
    x = np.zeros(ncols, dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = R[i, ncols]
    if isinstance(field, ArtinSchreierField):
        return x.reshape(n, field.p)
    return x


def inverse(field: Field, A: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    Fp_A = _as_fp(field, A)
    N = Fp_A.shape[0]
    aug = np.hstack([Fp_A, np.eye(N, dtype=np.int64)])
    R, piv = rref(aug, field.p)
    if piv[:N] != list(range(N)):
        raise FieldError("matrix is singular")
    inv = R[:N, N:]
    if isinstance(field, PrimeField):
        return inv
    p = field.p
    # the inverse of an extension-linear map is extension-linear; read off
    # each scalar as the image of 1 in the corresponding p x p block
    return inv.reshape(n, p, n, p)[:, :, :, 0].transpose(0, 2, 1).copy()


def span_contains(field: Field, basis: np.ndarray, vectors: np.ndarray) -> bool:
    """True if every row of ``vectors`` lies in the row span of ``basis``."""
    basis = np.asarray(basis, dtype=np.int64)
    vectors = np.asarray(vectors, dtype=np.int64)
    if vectors.shape[0] == 0:
        return True
    if basis.shape[0] == 0:
        return bool(np.all(field.is_zero(vectors)))
    return rank(field, np.concatenate([basis, vectors])) == rank(field, basis)


def poly_eval(coeffs: Sequence, x: int, p: int) -> int:
    acc = 0
    for c in reversed(list(coeffs)):
        acc = (acc * x + int(c)) % p
    return acc


def poly_roots(coeffs: Iterable, p: int) -> list[int]:
    """All roots in F_p of c0 + c1 x + c2 x^2 + ..., by exhaustive evaluation."""
    cs = [int(c) % p for c in coeffs]
    if not any(cs):
        raise FieldError("the zero polynomial has every element as a root")
    return [x for x in range(p) if poly_eval(cs, x, p) == 0]
