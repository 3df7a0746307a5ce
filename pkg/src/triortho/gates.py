"""Diagonal phase gates, their hierarchy level, and exact phase-sum identities.

The gate U_{m,a} multiplies |j> by exp(2 pi i j^a / p^m).  Applied
transversally to an encoded state, the phase collected by a basis word f is
a cubic (p >= 5) or lifted-linear (p = 3) sum over its entries; the
identities verified here reduce that word-wise sum to a per-logical-qudit
sum weighted by the cubic weights of the H1 rows.  All arithmetic is exact
integer work — complex numbers only appear in the state-vector simulator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fplinalg import FpMatrix, FpVector, PrimeModulus
from .starproduct import power_weight

__all__ = [
    "GateSpec",
    "PhaseExponent",
    "PhaseIdentityError",
    "gate_phase",
    "hierarchy_level",
    "third_level_gate",
    "cubic_phase_sum",
    "ternary_mod9_sum",
    "p3_phase_sum",
    "find_p3_code",
]


class PhaseIdentityError(ArithmeticError):
    """The two sides of a phase-sum identity disagreed."""


@dataclass(frozen=True)
class GateSpec:
    """U_{m,a}: |j> gains exp(2 pi i j^a / p^m)."""

    modulus: PrimeModulus
    m: int
    a: int

    def __post_init__(self):
        if not isinstance(self.m, int) or self.m < 1:
            raise ValueError(f"precision m must be a positive integer, got {self.m}")
        if not isinstance(self.a, int) or not 1 <= self.a <= self.modulus.p - 1:
            raise ValueError(f"degree a must satisfy 1 <= a <= p-1, got {self.a}")
        if self.modulus.p**self.m >= 2**63:
            raise ValueError(f"phase denominator p^m = {self.modulus.p}^{self.m} overflows 64 bits")

    @classmethod
    def make(cls, p, m: int, a: int) -> "GateSpec":
        mod = p if isinstance(p, PrimeModulus) else PrimeModulus(p)
        return cls(mod, m, a)

    @property
    def p(self) -> int:
        return self.modulus.p

    @property
    def denominator(self) -> int:
        return self.p**self.m

    def label(self) -> str:
        return f"U_{{{self.m},{self.a}}}"


@dataclass(frozen=True)
class PhaseExponent:
    """exp(2 pi i numerator / modulus), held exactly."""

    numerator: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        if not 0 <= self.numerator < self.modulus:
            raise ValueError(f"numerator {self.numerator} not reduced mod {self.modulus}")

    def __int__(self) -> int:
        return self.numerator


def gate_phase(g: GateSpec, j: int) -> PhaseExponent:
    """Phase exponent picked up by |j>: j^a mod p^m, j canonical in [0, p)."""
    if not 0 <= j < g.p:
        raise ValueError(f"basis label must lie in [0, {g.p})")
    return PhaseExponent(pow(j, g.a, g.denominator), g.denominator)


def hierarchy_level(g: GateSpec) -> int:
    """Diagonal-gate level (p-1)(m-1) + a of U_{m,a}."""
    return (g.p - 1) * (g.m - 1) + g.a


def third_level_gate(p) -> GateSpec:
    """The canonical level-3 gate: U_{1,3} for p >= 5, U_{2,1} for p = 3."""
    mod = p if isinstance(p, PrimeModulus) else PrimeModulus(p)
    if mod.p == 3:
        return GateSpec(mod, 2, 1)
    if mod.p >= 5:
        return GateSpec(mod, 1, 3)
    raise ValueError("no third-level diagonal gate for p = 2 in this family")


def cubic_phase_sum(H: FpMatrix, u: FpVector) -> PhaseExponent:
    """Both sides of the cubic identity sum_i f_i^3 = sum_a u_a^3 eps_a (mod p).

    f = u·H with u running over all rows (coefficients on H1 rows carry the
    logical label, coefficients on H0 rows shift within the coset; the H0
    rows contribute cubic weight 0 for construction codes).  Raises
    PhaseIdentityError when the two sides disagree — tri-orthogonality alone
    does not force the identity, the punctured-triply-even structure does.
    """
    p = H.p
    if p < 5:
        raise ValueError("cubic identity applies to p >= 5; use p3_phase_sum for p = 3")
    if u.p != p or len(u) != H.nrows:
        raise ValueError(f"u must have one coefficient per row of H ({H.nrows})")
    f = FpVector(H.modulus, u.array @ H.array % p)
    lhs = power_weight(f, 3)
    eps = [power_weight(H.row(a), 3) for a in range(H.nrows)]
    rhs = sum(pow(int(ua), 3, p) * e for ua, e in zip(u, eps)) % p
    if lhs != rhs:
        raise PhaseIdentityError(
            f"cubic phase identity fails for u={u.tolist()}: "
            f"sum f^3 = {lhs} but sum u^3 eps = {rhs} (mod {p})"
        )
    return PhaseExponent(lhs, p)


def ternary_mod9_sum(values) -> int:
    """Sum mod 9 assembled purely from ternary digits.

    Writing each value as a0 + 3 a1, the sum mod 9 equals

        e1 - 3 e2 - 3 s + 3 e3 + 3 t1   (mod 9)

    where e1, e2, e3 are the elementary symmetric sums of the a0 digits,
    s = sum over ordered pairs of a0_i^2 a0_j, t1 = sum of the a1 digits,
    and every one of those five quantities is reduced mod 3 first.  Agrees
    with plain integer addition on every input (tested exhaustively for
    short sequences).
    """
    e1 = e2 = e3 = p2 = t1 = 0
    for v in values:
        if not isinstance(v, (int, np.integer)) or not 0 <= v < 9:
            raise ValueError(f"values must be integers in [0, 9), got {v!r}")
        a0 = int(v) % 3
        a1 = int(v) // 3
        e3 = (e3 + e2 * a0) % 3
        e2 = (e2 + e1 * a0) % 3
        e1 = (e1 + a0) % 3
        p2 = (p2 + a0 * a0) % 3
        t1 = (t1 + a1) % 3
    # s = sum_{i != j} a_i^2 a_j = (sum a^2)(sum a) - sum a^3, with a^3 = a mod 3
    s = (p2 * e1 - e1) % 3
    return (e1 - 3 * e2 - 3 * s + 3 * e3 + 3 * t1) % 9


def p3_phase_sum(H: FpMatrix, u: FpVector) -> PhaseExponent:
    """Both sides of the qutrit identity sum_i f_i = sum_a u_a eps_a (mod 9).

    Entries of f = u·H (mod 3) are lifted to integers and summed mod 9
    through the ternary-digit formula; eps_a is the plain integer sum of the
    lifted row a, reduced mod 9.  Raises PhaseIdentityError on mismatch.
    """
    if H.p != 3 or u.p != 3:
        raise ValueError("p3_phase_sum is specific to F_3")
    if len(u) != H.nrows:
        raise ValueError(f"u must have one coefficient per row of H ({H.nrows})")
    f = u.array @ H.array % 3
    lhs = ternary_mod9_sum(int(x) for x in f)
    eps9 = [int(H.array[a].sum()) % 9 for a in range(H.nrows)]
    rhs = sum(int(ua) * e for ua, e in zip(u, eps9)) % 9
    if lhs != rhs:
        raise PhaseIdentityError(
            f"qutrit phase identity fails for u={u.tolist()}: "
            f"sum f = {lhs} but sum u eps = {rhs} (mod 9)"
        )
    return PhaseExponent(lhs, 9)


def _p3_logical_motifs(max_len: int):
    """Full-support candidate rows v with square weight != 0 whose multiples
    satisfy the mod-9 identity on their own support."""
    out = []
    for length in range(1, max_len + 1):
        for digits in range(3**length):
            v = tuple((digits // 3**i) % 3 for i in range(length))
            if 0 in v:
                continue
            if sum(x * x for x in v) % 3 == 0:
                continue
            eps = sum(v) % 9
            if all(sum((c * x) % 3 for x in v) % 9 == c * eps % 9 for c in (1, 2)):
                out.append(v)
    return out


def _p3_stabilizer_motifs(max_len: int):
    """Full-support candidate rows w with square weight 0 whose every multiple
    has integer sum 0 mod 9 (so coset shifts never move the phase)."""
    out = []
    for length in range(1, max_len + 1):
        for digits in range(3**length):
            w = tuple((digits // 3**i) % 3 for i in range(length))
            if 0 in w:
                continue
            if sum(x * x for x in w) % 3 != 0:
                continue
            if all(sum((c * x) % 3 for x in w) % 9 == 0 for c in (1, 2)):
                out.append(w)
    return out


def find_p3_code(max_cols: int = 14, logical_rows: int = 2, stabilizer_rows: int = 1):
    """Deterministic search for a qutrit code satisfying the mod-9 gate identity.

    Assembles rows from disjoint-support motifs (pair and triple star
    products then vanish automatically), smallest total length first, and
    keeps the first assembly whose identity verifies exhaustively over every
    coefficient vector u in F_3^rows.  Returns the assembled TriorthogonalCode.
    """
    from .triortho_css import code_from_matrix

    if logical_rows < 1 or stabilizer_rows < 1:
        raise ValueError("need at least one logical and one stabilizer row")
    log_motifs = _p3_logical_motifs(max_len=4)
    stab_motifs = _p3_stabilizer_motifs(max_len=min(9, max_cols))
    rows_total = logical_rows + stabilizer_rows
    best = None
    for logs in _choices(log_motifs, logical_rows):
        for stabs in _choices(stab_motifs, stabilizer_rows):
            motifs = list(logs) + list(stabs)
            n = sum(len(v) for v in motifs)
            if n > max_cols or (best is not None and n >= best[0]):
                continue
            rows = []
            offset = 0
            for v in motifs:
                row = [0] * n
                row[offset : offset + len(v)] = list(v)
                rows.append(row)
                offset += len(v)
            H = FpMatrix.from_rows(3, rows)
            if _p3_identity_exhaustive(H, rows_total):
                best = (n, H)
    if best is None:
        raise ValueError(f"no qutrit code with the mod-9 identity found within {max_cols} columns")
    return code_from_matrix(3, best[1])


def _choices(pool, count):
    """All ordered selections with repetition, lexicographic in the pool order."""
    if count == 0:
        yield ()
        return
    for head in pool:
        for tail in _choices(pool, count - 1):
            yield (head,) + tail


def _p3_identity_exhaustive(H: FpMatrix, rows_total: int) -> bool:
    for idx in range(3**rows_total):
        u = FpVector(3, [(idx // 3**r) % 3 for r in range(rows_total)])
        try:
            p3_phase_sum(H, u)
        except PhaseIdentityError:
            return False
    return True
