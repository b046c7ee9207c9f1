"""Finitely presented groups: quotients, abelianization, integer homology.

A presentation either presents the group of interest exactly or is a
*surjective bound*: the presented group surjects onto the target, so proving
the presented group trivial proves the target trivial.  All constructions
that graft relation sets through gluings produce bounds, and the distinction
is tracked so reports never overclaim.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

from .words import Alphabet, Word, are_conjugate, from_letters


class PresentationError(ValueError):
    """Relators over the wrong alphabet, bad indices, malformed moves."""


class Exactness(enum.Enum):
    EXACT = "exact"
    SURJECTIVE_BOUND = "surjective-bound"


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    relators: tuple[Word, ...] = ()
    exactness: Exactness = Exactness.EXACT

    def __post_init__(self) -> None:
        object.__setattr__(self, "relators", tuple(self.relators))
        for r in self.relators:
            if r.alphabet != self.alphabet:
                raise PresentationError(f"relator {r} is not over the presentation alphabet")

    @property
    def ngens(self) -> int:
        return len(self.alphabet)

    @property
    def nrels(self) -> int:
        return len(self.relators)

    def is_empty(self) -> bool:
        return self.ngens == 0 and self.nrels == 0

    def __str__(self) -> str:
        gens = ", ".join(self.alphabet.names)
        rels = ", ".join(str(r) for r in self.relators)
        return f"< {gens} | {rels} >"


def quotient_by(p: Presentation, new_relators: Iterable[Word]) -> Presentation:
    """Quotient by the normal closure of ``new_relators`` (relator addition)."""
    new = tuple(new_relators)
    for r in new:
        if r.alphabet != p.alphabet:
            raise PresentationError(f"relator {r} uses foreign symbols")
    return Presentation(p.alphabet, p.relators + new, p.exactness)


def solve_relator(relator: Word, gen: str) -> Word:
    """Read a relator as an equation and solve for ``gen``.

    Requires ``gen`` to occur exactly once, with exponent +-1.  For
    ``relator = p g^e q`` the solution is ``p^-1 q^-1`` (e = 1) or ``q p``
    (e = -1); it never mentions ``gen``.
    """
    letters = list(relator.letters())
    hits = [i for i, (n, _) in enumerate(letters) if n == gen]
    if len(hits) != 1:
        raise PresentationError(f"generator {gen!r} does not occur exactly once in {relator}")
    i = hits[0]
    p = from_letters(relator.alphabet, letters[:i])
    q = from_letters(relator.alphabet, letters[i + 1 :])
    if letters[i][1] == 1:
        return ~p * ~q
    return q * p


def replace_relator_with_conjugate(p: Presentation, index: int, new: Word) -> Presentation:
    """Swap one relator for a word with the same normal closure.

    The replacement must be conjugate to the old relator in the free group;
    the proof obligation is checked, not assumed.
    """
    old = p.relators[index]
    if not are_conjugate(old, new):
        raise PresentationError(f"{new} is not a free-group conjugate of {old}")
    relators = list(p.relators)
    relators[index] = new
    return Presentation(p.alphabet, tuple(relators), p.exactness)


def reorder_relators(p: Presentation, order: Sequence[int]) -> Presentation:
    """Permute the relator list (the presented group is unchanged)."""
    if sorted(order) != list(range(p.nrels)):
        raise PresentationError("reorder indices are not a permutation")
    return Presentation(p.alphabet, tuple(p.relators[i] for i in order), p.exactness)


# -- commutation rewriting ---------------------------------------------------

def simple_commutator_pair(w: Word) -> tuple[str, str] | None:
    """If ``w`` is the commutator of two signed single generators, the bases."""
    letters = list(w.letters())
    if len(letters) != 4:
        return None
    (g, e), (h, f), (g2, e2), (h2, f2) = letters
    if g == g2 and h == h2 and e == -e2 and f == -f2 and g != h:
        return (g, h)
    return None


def commuting_pairs(relators: Iterable[Word]) -> frozenset[frozenset[str]]:
    """Generator pairs forced to commute by simple commutator relators."""
    pairs = set()
    for r in relators:
        hit = simple_commutator_pair(r)
        if hit:
            pairs.add(frozenset(hit))
    return frozenset(pairs)


def commutation_normal_form(w: Word, pairs: frozenset[frozenset[str]]) -> Word:
    """Sort letters by declaration rank across known commuting pairs.

    Each pass applies the leftmost rank-lowering swap of adjacent letters
    whose bases commute, then freely reduces; the (length, inversions)
    measure strictly drops, so the loop terminates deterministically.
    """
    alphabet = w.alphabet
    letters = list(w.letters())
    while True:
        word = from_letters(alphabet, letters)
        letters = list(word.letters())
        swapped = False
        for i in range(len(letters) - 1):
            g, h = letters[i][0], letters[i + 1][0]
            if g != h and frozenset((g, h)) in pairs and alphabet.rank(h) < alphabet.rank(g):
                letters[i], letters[i + 1] = letters[i + 1], letters[i]
                swapped = True
                break
        if not swapped:
            return word


@dataclass(frozen=True)
class PruneRecord:
    index: int
    relator: Word
    reason: str


def prune_redundant(
    alphabet: Alphabet, relators: Sequence[Word]
) -> tuple[list[Word], list[PruneRecord]]:
    """Drop relators that restate what the remaining ones already say.

    A relator goes when, rewriting with the commuting pairs declared by the
    *other* relators, it either becomes trivial or coincides (up to rotation
    and inversion) with an earlier kept relator.  Removal only ever weakens a
    presentation, which is sound for surjective bounds.
    """
    kept = [True] * len(relators)
    removed: list[PruneRecord] = []
    for i, r in enumerate(relators):
        others = [s for j, s in enumerate(relators) if j != i and kept[j]]
        pairs = commuting_pairs(others)
        nf = commutation_normal_form(r, pairs)
        if nf.is_identity:
            kept[i] = False
            removed.append(PruneRecord(i, r, "trivial modulo commuting relations"))
            continue
        for j in range(i):
            if not kept[j]:
                continue
            nfj = commutation_normal_form(relators[j], pairs)
            if not nfj.is_identity and (are_conjugate(nf, nfj) or are_conjugate(nf, ~nfj)):
                kept[i] = False
                removed.append(PruneRecord(i, r, f"restates relator {j}"))
                break
    return [r for i, r in enumerate(relators) if kept[i]], removed


# -- abelianization and integer homology -------------------------------------

def abelianize(p: Presentation) -> list[list[int]]:
    """Exponent-sum matrix: one row per relator, one column per generator."""
    return [[r.exponent_sum(name) for name in p.alphabet.names] for r in p.relators]


def _min_abs_pivot(m: list[list[int]], s: int) -> tuple[int, int] | None:
    best = None
    for i in range(s, len(m)):
        for j in range(s, len(m[0])):
            v = abs(m[i][j])
            if v and (best is None or v < abs(m[best[0]][best[1]])):
                best = (i, j)
    return best


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero invariant factors d1 | d2 | ... of an integer matrix.

    Elementary row/column operations over Python integers, so no overflow.
    Pivots are the smallest-magnitude nonzero entries, which keeps entry
    growth tame on small matrices.
    """
    m = [list(map(int, row)) for row in matrix]
    if not m or not m[0]:
        return []
    rows, cols = len(m), len(m[0])
    if any(len(row) != cols for row in m):
        raise ValueError("ragged matrix")

    s = 0
    limit = min(rows, cols)
    while s < limit:
        pivot = _min_abs_pivot(m, s)
        if pivot is None:
            break
        pi, pj = pivot
        m[s], m[pi] = m[pi], m[s]
        for row in m:
            row[s], row[pj] = row[pj], row[s]

        dirty = False
        for i in range(s + 1, rows):
            if m[i][s]:
                q = m[i][s] // m[s][s]
                for j in range(s, cols):
                    m[i][j] -= q * m[s][j]
                if m[i][s]:
                    dirty = True
        for j in range(s + 1, cols):
            if m[s][j]:
                q = m[s][j] // m[s][s]
                for i in range(s, rows):
                    m[i][j] -= q * m[i][s]
                if m[s][j]:
                    dirty = True
        if dirty:
            continue

        # pivot must divide the untouched block; fold a bad row in and redo
        bad = next(
            (
                i
                for i in range(s + 1, rows)
                for j in range(s + 1, cols)
                if m[i][j] % m[s][s]
            ),
            None,
        )
        if bad is not None:
            for j in range(s, cols):
                m[s][j] += m[bad][j]
            continue
        s += 1

    diag = [abs(m[i][i]) for i in range(min(rows, cols)) if m[i][i]]
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            g = gcd(diag[i], diag[j])
            diag[i], diag[j] = g, diag[i] * diag[j] // g
    return sorted(diag)


def homology_invariants(p: Presentation) -> tuple[int, list[int]]:
    """(free rank, torsion coefficients) of the abelianized group."""
    factors = smith_normal_form(abelianize(p))
    rank = p.ngens - len(factors)
    torsion = [d for d in factors if d > 1]
    return rank, torsion
