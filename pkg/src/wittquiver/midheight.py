"""Analyses for characters of height 1 < r < p-1 and r = p-1."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field as dc_field

import numpy as np

from . import gf
from .ext1 import DEFAULT_CAP, SizeCapExceeded, ext1, hom_dim
from .rep import Representation, induce, is_simple, one_dim_rep, spin, validate
from .witt import (
    Character, beta_radical, centralizer, classify_restricted, height, witt,
)


@dataclass
class MidHeightModules:
    chi: Character
    s: int
    k_chi: object
    S: Representation
    L: Representation


def midheight_modules(chi: Character) -> MidHeightModules:
    """k_chi on g_s, S = u(b+, chi) (x) k_chi and L = u(g, chi) (x) k_chi."""
    p = chi.p
    r = height(chi)
    if not 1 < r < p - 1:
        raise ValueError(f"middle heights are 1 < r < p-1; this character has height {r}")
    s = r // 2
    psi = one_dim_rep(chi, s)
    S = induce(chi, s, psi, 0, label="S")
    L = induce(chi, s, psi, -1, label="L")
    return MidHeightModules(chi, s, psi, S, L)


def _quotient_dim(rows_sub: np.ndarray, rows_all: np.ndarray, p: int) -> int:
    F = gf.PrimeField(p)
    return (gf.rank(F, rows_all) if rows_all.shape[0] else 0) - (gf.rank(F, rows_sub) if rows_sub.shape[0] else 0)


def restricted_abelianization_dim(p: int, basis: np.ndarray) -> int:
    """dim H^1(u(h), k) = dim h / ([h, h] + span h^[p]) for a restricted subalgebra h."""
    W = witt(p)
    h = np.asarray(basis, dtype=np.int64)
    if h.shape[0] == 0:
        return 0
    gens = [W.bracket(x, y) for x in h for y in h] + [W.p_power(x) for x in h]
    return _quotient_dim(np.array(gens), h, p) if gens else gf.rank(W.field, h)


def abelianization_dim(p: int, start: int) -> int:
    """dim g_start / [g_start, g_start]."""
    W = witt(p)
    h = W.graded(start)
    if h.shape[0] == 0:
        return 0
    der = np.array([W.bracket(x, y) for x in h for y in h])
    return _quotient_dim(der, h, p)


@dataclass
class MidHeightReport:
    p: int
    r: int
    s: int
    chi: list
    dim_S: int
    dim_L: int
    rad_basis: list
    rad_is_ideal: bool
    chi_vanishes_on_rad: bool
    ext_SS: int
    ext_LL: int | None
    ext_LL_status: str  # "computed" | "skipped: ..."
    thmA_dim: int | None  # dim g_r / [g_r, g_r] (even r)
    h1_rad: int  # dim H^1(u(rad), k)
    thmC_identity: bool
    S_rad_invariant: bool
    S_simple: bool
    hom_S_L: int
    propB_holds: bool | None
    conjecture: str
    notes: list = dc_field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def analyze_midheight(p: int, chi: Character, cap: int = DEFAULT_CAP) -> MidHeightReport:
    r = height(chi)
    mods = midheight_modules(chi)
    S, L = mods.S, mods.L
    for M in (S, L):
        rep_ok = validate(M)
        if not rep_ok:
            raise AssertionError(f"induced module {M.label} is invalid: {rep_ok.first}")
    rad, rad_ideal = beta_radical(chi, 0)
    W = witt(p)
    notes = []
    if r % 2:
        notes.append("odd height: conjugacy classes are not unique, results are for this character only")
    chi_on_rad = all(chi(x) == 0 for x in rad)

    ext_SS = ext1(S, S, cap=cap).dim
    try:
        ext_LL = ext1(L, L, cap=cap).dim
        status = "computed"
    except SizeCapExceeded as exc:
        ext_LL, status = None, f"skipped: {exc}"

    h1_rad = restricted_abelianization_dim(p, rad)
    thmA = abelianization_dim(p, r) if r % 2 == 0 else None

    dim_b, dim_gs = p - 1, p - 1 - mods.s
    thmC = len(rad) > 0 and (dim_b - len(rad)) == 2 * (dim_gs - len(rad))
    thmC = thmC and p ** (dim_b - len(rad)) == S.dim ** 2

    F = S.field
    S_inv = all(np.all(F.is_zero(S.act_element(x))) for x in rad)
    try:
        S_simple = is_simple(S)
    except ValueError:
        S_simple = all(spin(S, v) == S.dim for v in np.eye(S.dim, dtype=np.int64))
    hom_SL = hom_dim(S, L.restrict(0))

    propB = None if ext_LL is None else ext_LL >= ext_SS - 1
    if r % 2 == 0 and ext_LL is not None:
        conj = "consistent" if ext_LL == ext_SS - 1 else "inconsistent"
    elif r % 2 == 0:
        conj = "not computed"
    else:
        conj = "not applicable (odd height)"
    return MidHeightReport(
        p, r, mods.s, list(chi.values), S.dim, L.dim,
        [[int(v) for v in x] for x in rad], bool(rad_ideal), chi_on_rad,
        ext_SS, ext_LL, status, thmA, h1_rad, bool(thmC), bool(S_inv), bool(S_simple),
        hom_SL, propB, conj, notes,
    )


# ---------------------------------------------------------------------------
# height p - 1


@dataclass
class TopHeightResult:
    p: int
    chi: list
    centralizer: list
    verdict: str
    diagnostic: str
    loop_multiplicity: int | None  # Ext^1(L, L) on the distinguished simple; None for mixed

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def classify_height_pm1(p: int, chi: Character) -> TopHeightResult:
    r = height(chi)
    if r != p - 1:
        raise ValueError(f"expected a character of height {p - 1}, got height {r}")
    C = centralizer(chi)
    cls = classify_restricted(p, C)
    loop = {"torus": 0, "p-nilpotent": 1}.get(cls.verdict)
    return TopHeightResult(p, list(chi.values), [[int(v) for v in x] for x in C], cls.verdict, cls.diagnostic, loop)


__all__ = [
    "MidHeightModules", "midheight_modules", "MidHeightReport", "analyze_midheight",
    "TopHeightResult", "classify_height_pm1", "restricted_abelianization_dim", "abelianization_dim",
]
