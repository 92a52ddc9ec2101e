"""Z^k covers of a translation surface described by deck-shift data.

A cover is specified by k independent homology classes gamma_1 .. gamma_k:
crossing an edge pair changes the deck coordinate by the pairing of the
gammas against the pair's dual class.  Pairs outside the chosen basis
(spanning-tree pairs) are glued trivially and have shift zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactgeom import Vec2, cross
from .homology import (DualClass, EdgeBasis, RelHomologyClass, intersection)
from .surface import TranslationSurface


class DependentClasses(Exception):
    """The proposed deck classes are linearly dependent."""


class NonIntegralDecomposition(Exception):
    """A pair translation is not an integer combination of the chosen
    lattice basis."""


@dataclass(frozen=True)
class DeckCoordinate:
    """Point of the deck group Z^k."""

    coords: tuple[int, ...]

    def shift(self, delta: Sequence[int], sign: int = 1) -> "DeckCoordinate":
        return DeckCoordinate(tuple(c + sign * d
                                    for c, d in zip(self.coords, delta)))

    @staticmethod
    def zero(k: int) -> "DeckCoordinate":
        return DeckCoordinate((0,) * k)


class CoverDescriptor:
    """Deck-shift table of the Z^k cover defined by k homology classes."""

    def __init__(self, basis: EdgeBasis, gammas: Sequence[RelHomologyClass]):
        self.basis = basis
        self.gammas = tuple(gammas)
        for g in self.gammas:
            if g.basis is not basis:
                raise ValueError("classes must live over the given basis")
        if _rational_rank([g.coeffs for g in self.gammas]) != len(self.gammas):
            raise DependentClasses("deck classes are linearly dependent")
        d = len(basis.surface.pair_list)
        shifts = []
        for p in range(d):
            j = basis.basis_position.get(p)
            if j is None:
                shifts.append((0,) * len(self.gammas))
            else:
                shifts.append(tuple(g.coeffs[j] for g in self.gammas))
        self.shifts = tuple(shifts)

    @property
    def k(self) -> int:
        return len(self.gammas)

    def shift_of_pair(self, pair: int) -> tuple[int, ...]:
        return self.shifts[pair]

    def shift_of_slot(self, slot) -> tuple[int, ...]:
        """Oriented shift: crossing out through this slot adds the result
        to the deck coordinate."""
        surf = self.basis.surface
        s = surf.orient(slot)
        return tuple(s * c for c in self.shifts[surf.pair_index[slot]])


def cover_descriptor(basis: EdgeBasis,
                     gammas: Sequence[RelHomologyClass]) -> CoverDescriptor:
    return CoverDescriptor(basis, gammas)


def cross_edge(desc: CoverDescriptor, deck: DeckCoordinate, e,
               direction: str = "leaving") -> DeckCoordinate:
    """Deck coordinate after crossing an edge.

    ``e`` is a slot or EdgeRef; ``direction`` says whether the trajectory
    is leaving the edge's face through it or entering.  Leaving through an
    edge and then leaving through its partner is the identity.
    """
    slot = e.slot() if hasattr(e, "slot") else tuple(e)
    surf = desc.basis.surface
    sign = surf.orient(slot)
    if direction == "entering":
        sign = -sign
    elif direction != "leaving":
        raise ValueError("direction must be 'entering' or 'leaving'")
    return deck.shift(desc.shifts[surf.pair_index[slot]], sign)


def lifts_cylinder(desc: CoverDescriptor, core: RelHomologyClass,
                   core_dual: DualClass) -> bool:
    """A cylinder lifts to closed cylinders in the cover iff its core
    curve pairs to zero with every deck class.

    The core curve enters through its dual (crossing-record) form; the
    class itself is taken for dimension checking.
    """
    if core.basis is not desc.basis or core_dual.basis is not desc.basis:
        raise ValueError("core curve must live over the descriptor's basis")
    return all(intersection(g, core_dual) == 0 for g in desc.gammas)


def tau_decomposition(surface: TranslationSurface, tau1: Vec2, tau2: Vec2):
    """Integer coefficients a^j with tau_j = a1 tau1 + a2 tau2 for each
    edge pair.  Raises NonIntegralDecomposition."""
    det = Fraction(cross(tau1, tau2))
    if det == 0:
        raise ValueError("lattice basis is degenerate")
    out = []
    for p, tau in enumerate(surface.pair_tau):
        a1 = Fraction(cross(tau, tau2)) / det
        a2 = Fraction(cross(tau1, tau)) / det
        if a1.denominator != 1 or a2.denominator != 1:
            raise NonIntegralDecomposition(
                "pair %d translation is not a lattice vector" % p)
        out.append((int(a1), int(a2)))
    return out


def torus_cover_cycles(basis: EdgeBasis, e1, e2):
    """The two deck classes of the plane cover of a torus, relative to the
    lattice basis given by the translations of two chosen edge pairs.

    gamma_l = sum_j a_l^j h(e_j) with tau_j = a_1^j tau_{e1} + a_2^j
    tau_{e2}; edges e1, e2 are slots or EdgeRefs.  Accepts a surface in
    place of a basis.
    """
    if isinstance(basis, TranslationSurface):
        basis = EdgeBasis(basis)
    surf = basis.surface
    p1 = surf.pair_index[_slot_of(e1)]
    p2 = surf.pair_index[_slot_of(e2)]
    a = tau_decomposition(surf, surf.pair_tau[p1], surf.pair_tau[p2])
    g1 = basis.zero()
    g2 = basis.zero()
    for p in range(len(surf.pair_list)):
        cls = basis.pair_class(p)
        g1 = g1 + cls.scale(a[p][0])
        g2 = g2 + cls.scale(a[p][1])
    return g1, g2


def _slot_of(e):
    return e.slot() if hasattr(e, "slot") else tuple(e)


def _rational_rank(rows) -> int:
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    row = 0
    for c in range(cols):
        piv = None
        for r in range(row, len(m)):
            if m[r][c] != 0:
                piv = r
                break
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        pv = m[row][c]
        for r in range(len(m)):
            if r != row and m[r][c] != 0:
                f = m[r][c] / pv
                for cc in range(cols):
                    m[r][cc] -= f * m[row][cc]
        row += 1
        rank += 1
        if row == len(m):
            break
    return rank
