"""m*-orthogonality of star-signed code matrices.

The strong form works in ordinary integer arithmetic on canonical
representatives in [0, d), so verdicts are independent of d whenever the
matrix entries are; the weak form reduces weights mod d.  Row multisets are
enumerated with repetition, and the report carries every offending multiset.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import ring


@dataclass(frozen=True)
class StarSignedMatrix:
    """A code matrix G together with the +-1 column signs of F."""

    G: ring.ResidueMatrix
    signs: tuple

    def __post_init__(self):
        if len(self.signs) != self.G.ncols:
            raise ValueError("signs length must equal column count")
        if any(s not in (-1, 1) for s in self.signs):
            raise ValueError("signs must be +-1")


@dataclass
class OrthogonalityReport:
    m: int
    mode: str
    holds: bool
    witnesses: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "mode": self.mode,
            "holds": self.holds,
            "witnesses": [
                {"rows": list(rows), "weight": w} for rows, w in self.witnesses
            ],
        }


def circle_product(rows) -> tuple:
    """Entrywise integer product of canonical representatives; NOT reduced."""
    rows = [tuple(r.entries) if isinstance(r, ring.ResidueVector) else tuple(r) for r in rows]
    if not rows:
        raise ValueError("need at least one row")
    if any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("row lengths differ")
    out = []
    for col in zip(*rows):
        prod = 1
        for e in col:
            prod *= int(e)
        out.append(prod)
    return tuple(out)


def signed_weight(v, signs) -> int:
    """Sum of sign-weighted entries, as an ordinary integer."""
    v = tuple(v.entries) if isinstance(v, ring.ResidueVector) else tuple(v)
    if len(v) != len(signs):
        raise ValueError("length mismatch")
    return sum(s * int(e) for s, e in zip(signs, v))


def is_m_star_orthogonal(M: StarSignedMatrix, g1_rows, m: int, mode: str = "strong") -> OrthogonalityReport:
    """Check the order-m orthogonality condition with full witness output.

    Multisets of m rows must have signed circle-product weight 0, except m
    copies of a single G1 row, which must have weight 1.  Strong mode
    compares integers; weak mode compares residues mod d.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if mode not in ("strong", "weak"):
        raise ValueError("mode must be 'strong' or 'weak'")
    d = M.G.modulus
    g1 = frozenset(g1_rows)
    witnesses = []
    for multiset in itertools.combinations_with_replacement(range(M.G.nrows), m):
        w = signed_weight(circle_product([M.G.rows[i] for i in multiset]), M.signs)
        expect = 1 if len(set(multiset)) == 1 and multiset[0] in g1 else 0
        if mode == "weak":
            bad = (w - expect) % d != 0
        else:
            bad = w != expect
        if bad:
            witnesses.append((multiset, w))
    return OrthogonalityReport(m=m, mode=mode, holds=not witnesses, witnesses=witnesses)


def max_m_star(M: StarSignedMatrix, g1_rows, mode: str = "strong", m_cap: int = 8) -> int:
    """Largest m <= m_cap at which the condition holds; 0 if none."""
    best = 0
    for m in range(1, m_cap + 1):
        if is_m_star_orthogonal(M, g1_rows, m, mode).holds:
            best = m
    return best


def code_matrix(C) -> tuple:
    """(StarSignedMatrix, g1 row index set) for a ColorCode, G1 rows first."""
    rows = C.G1.rows + C.G0.rows
    M = StarSignedMatrix(ring.ResidueMatrix(C.d, rows), C.star_signs)
    return M, frozenset(range(C.G1.nrows))
