"""Presentation simplification with replayable derivation traces.

Moves, each of which preserves the presented group up to isomorphism:

  (a) eliminate a generator using a relator in which it occurs exactly once
      with exponent +-1 (the relator is the generator's definition);
  (b) delete relators that reduce to the identity, and relators that merely
      repeat another relator up to rotation and inversion;
  (c) replace a relator by its product with a conjugate of another whenever
      that makes it strictly shorter (found by overlapping more than half of
      the other relator), and replace relators by their cyclic reductions.

The greedy strategy eliminates the generator with the shortest definition,
ties broken by generator declaration order, so traces are stable across
runs.  Every step carries enough data to be re-applied from scratch;
``replay`` recomputes the whole derivation and is used to validate traces.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from .presentations import Presentation, PresentationError, solve_relator
from .words import Alphabet, Word, cyclic_core, from_letters, rotations, substitute


@dataclass(frozen=True)
class Eliminate:
    gen: str
    relator_index: int
    definition: Word


@dataclass(frozen=True)
class RemoveTrivial:
    relator_index: int


@dataclass(frozen=True)
class RemoveDuplicate:
    relator_index: int
    kept_index: int


@dataclass(frozen=True)
class CyclicReduce:
    relator_index: int
    prefix: Word


@dataclass(frozen=True)
class Shorten:
    """Rewrite relator ``target`` with a chunk of relator ``other``.

    ``other`` rotated by ``rotation`` (inverted first when ``inverted``)
    has its first ``overlap`` letters matched at ``position`` in the target
    and replaced by the inverse of its remainder.
    """

    target: int
    other: int
    inverted: bool
    rotation: int
    position: int
    overlap: int


TietzeStep = Union[Eliminate, RemoveTrivial, RemoveDuplicate, CyclicReduce, Shorten]


@dataclass(frozen=True)
class DerivationTrace:
    steps: tuple[TietzeStep, ...]
    complete: bool

    def eliminated_generators(self) -> list[str]:
        return [s.gen for s in self.steps if isinstance(s, Eliminate)]


class _State:
    def __init__(self, p: Presentation):
        self.alphabet = p.alphabet
        self.relators = list(p.relators)
        self.exactness = p.exactness

    def presentation(self) -> Presentation:
        return Presentation(self.alphabet, tuple(self.relators), self.exactness)

    def apply(self, step: TietzeStep) -> None:
        if isinstance(step, RemoveTrivial):
            if not self.relators[step.relator_index].is_identity:
                raise PresentationError("replay: relator is not trivial")
            del self.relators[step.relator_index]
        elif isinstance(step, RemoveDuplicate):
            r = self.relators[step.relator_index]
            kept = self.relators[step.kept_index]
            if r not in rotations(kept) and r not in rotations(~kept):
                raise PresentationError("replay: relator is not a duplicate")
            del self.relators[step.relator_index]
        elif isinstance(step, CyclicReduce):
            r = self.relators[step.relator_index]
            core, prefix = cyclic_core(r)
            if prefix != step.prefix:
                raise PresentationError("replay: cyclic reduction mismatch")
            self.relators[step.relator_index] = core
        elif isinstance(step, Eliminate):
            definition = solve_relator(self.relators[step.relator_index], step.gen)
            if definition != step.definition:
                raise PresentationError("replay: eliminated definition mismatch")
            target = self.alphabet.without(step.gen)
            images = {n: target.gen(n) for n in target.names}
            images[step.gen] = substitute(definition, {n: target.gen(n) for n in target.names}, target)
            del self.relators[step.relator_index]
            self.relators = [substitute(r, images, target) for r in self.relators]
            self.alphabet = target
        elif isinstance(step, Shorten):
            self.relators[step.target] = _shortened(
                self.relators[step.target],
                self.relators[step.other],
                step.inverted,
                step.rotation,
                step.position,
                step.overlap,
            )
        else:
            raise PresentationError(f"unknown step {step!r}")


def _shortened(target: Word, other: Word, inverted: bool, rotation: int, position: int, overlap: int) -> Word:
    src = ~other if inverted else other
    letters = list(src.letters())
    letters = letters[rotation:] + letters[:rotation]
    chunk, remainder = letters[:overlap], letters[overlap:]
    t = list(target.letters())
    if t[position : position + overlap] != chunk:
        raise PresentationError("replay: overlap does not match")
    inv_rem = [(n, -e) for n, e in reversed(remainder)]
    return from_letters(target.alphabet, t[:position] + inv_rem + t[position + overlap :])


def _find_shortening(relators: Sequence[Word]) -> Shorten | None:
    for ti, target in enumerate(relators):
        t_letters = list(target.letters())
        for oi, other in enumerate(relators):
            if oi == ti:
                continue
            n = len(other)
            if n < 2 or n > len(t_letters):
                continue
            for inverted in (False, True):
                src = ~other if inverted else other
                letters = list(src.letters())
                for rotation in range(n):
                    rot = letters[rotation:] + letters[:rotation]
                    for overlap in range(n, n // 2, -1):
                        chunk = rot[:overlap]
                        # replacement shortens iff overlap > n - overlap
                        if overlap <= n - overlap:
                            break
                        for pos in range(len(t_letters) - overlap + 1):
                            if t_letters[pos : pos + overlap] == chunk:
                                cand = _shortened(target, other, inverted, rotation, pos, overlap)
                                if len(cand) < len(target):
                                    return Shorten(ti, oi, inverted, rotation, pos, overlap)
    return None


def _find_elimination(alphabet: Alphabet, relators: Sequence[Word]) -> tuple[str, int] | None:
    # shortest definition first; ties eliminate the latest-declared
    # generator, so earlier-declared names survive
    best: tuple[int, int, int] | None = None
    choice: tuple[str, int] | None = None
    for idx, r in enumerate(relators):
        counts: dict[str, int] = {}
        for name, _ in r.letters():
            counts[name] = counts.get(name, 0) + 1
        for name, count in counts.items():
            if count != 1:
                continue
            key = (len(r) - 1, -alphabet.rank(name), idx)
            if best is None or key < best:
                best = key
                choice = (name, idx)
    return choice


def tietze_simplify(p: Presentation, budget: int = 1000) -> tuple[Presentation, DerivationTrace]:
    """Greedily simplify ``p``, recording a replayable trace.

    Runs until no move applies or ``budget`` recorded steps are spent; an
    exhausted budget returns the best presentation so far with the trace
    flagged incomplete.
    """
    if budget <= 0:
        raise PresentationError("budget must be positive")
    state = _State(p)
    steps: list[TietzeStep] = []

    def spend(step: TietzeStep) -> bool:
        if len(steps) >= budget:
            return False
        state.apply(step)
        steps.append(step)
        return True

    exhausted = False
    while not exhausted:
        # housekeeping: cyclic reduction, trivial and duplicate removal
        changed = True
        while changed and not exhausted:
            changed = False
            for i, r in enumerate(state.relators):
                core, prefix = cyclic_core(r)
                if not prefix.is_identity:
                    if not spend(CyclicReduce(i, prefix)):
                        exhausted = True
                    changed = True
                    break
            if changed or exhausted:
                continue
            for i, r in enumerate(state.relators):
                if r.is_identity:
                    if not spend(RemoveTrivial(i)):
                        exhausted = True
                    changed = True
                    break
            if changed or exhausted:
                continue
            for i, r in enumerate(state.relators):
                for j in range(i):
                    kept = state.relators[j]
                    if r in rotations(kept) or r in rotations(~kept):
                        if not spend(RemoveDuplicate(i, j)):
                            exhausted = True
                        changed = True
                        break
                if changed:
                    break
        if exhausted:
            break

        pick = _find_elimination(state.alphabet, state.relators)
        if pick is not None:
            gen, idx = pick
            definition = solve_relator(state.relators[idx], gen)
            if not spend(Eliminate(gen, idx, definition)):
                exhausted = True
            continue

        shorten = _find_shortening(state.relators)
        if shorten is not None:
            if not spend(shorten):
                exhausted = True
            continue
        break

    return state.presentation(), DerivationTrace(tuple(steps), complete=not exhausted)


def replay(initial: Presentation, trace: DerivationTrace) -> Presentation:
    """Re-apply a trace from the initial presentation; raises on mismatch."""
    state = _State(initial)
    for step in trace.steps:
        state.apply(step)
    return state.presentation()
