"""
Finite presentations of the fundamental group of a Seifert fibered boundary
"""

from __future__ import annotations
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from blowdown.kernel.smith import AbelianGroup, cokernel
from blowdown.plumbing.seifert import SeifertInvariant


Syllable = tuple[str, int]
"""
``(generator, exponent)`` with a nonzero exponent.
"""

Word = tuple[Syllable, ...]

FIBER = "h"


########################################################################################
######################################## Words #########################################
########################################################################################


def reduce_word(syllables: Iterable[Syllable]) -> Word:
    """
    Free reduction: merges adjacent powers of the same generator and drops zero
    exponents.
    """
    stack: list[Syllable] = []
    for generator, exponent in syllables:
        if stack and stack[-1][0] == generator:
            exponent += stack.pop()[1]
        if exponent:
            stack.append((generator, exponent))
    return tuple(stack)


def cyclically_reduce(word: Sequence[Syllable]) -> Word:
    """
    Free reduction of a relator read cyclically.
    """
    word = list(reduce_word(word))
    while len(word) >= 2 and word[0][0] == word[-1][0]:
        generator, exponent = word.pop()
        merged = word[0][1] + exponent
        word = [(generator, merged)] + word[1:] if merged else word[1:]
    return tuple(word)


def invert_word(word: Sequence[Syllable]) -> Word:
    return tuple((generator, -exponent) for generator, exponent in reversed(word))


def power_word(word: Sequence[Syllable], exponent: int) -> Word:
    if exponent < 0:
        return power_word(invert_word(word), -exponent)
    return reduce_word(tuple(word) * exponent)


def format_word(word: Sequence[Syllable]) -> str:
    if not word:
        return "1"
    return " ".join(
        generator if exponent == 1 else f"{generator}^{exponent}"
        for generator, exponent in word
    )


def exponent_sums(word: Sequence[Syllable]) -> dict[str, int]:
    sums: dict[str, int] = {}
    for generator, exponent in word:
        sums[generator] = sums.get(generator, 0) + exponent
    return sums


########################################################################################
##################################### Presentation #####################################
########################################################################################


@dataclass(frozen=True)
class GroupPresentation:
    """
    Generators and relators of a finitely presented group.

    Parameters
    ----------
    generators : tuple[str, ...]
        generator names, in order
    relators : tuple[Word, ...]
        words which equal 1
    leaf_generators : tuple[tuple[str, str], ...], optional
        ``(generator, sphere name)``: the generator is a normal circle to that sphere
    """

    generators: tuple[str, ...]
    relators: tuple[Word, ...]
    leaf_generators: tuple[tuple[str, str], ...] = field(default=())

    def __post_init__(self):
        known = set(self.generators)
        for relator in self.relators:
            for generator, exponent in relator:
                if generator not in known:
                    raise ValueError(
                        f"Relator {format_word(relator)} uses {generator!r}, which "
                        f"isn't a generator: {list(self.generators)}."
                    )
                if not exponent:
                    raise ValueError("Relators can't have zero exponents.")

    def generator_of_leaf(self, sphere: str) -> str:
        for generator, leaf in self.leaf_generators:
            if leaf == sphere:
                return generator
        raise KeyError(
            f"No generator is a normal circle to {sphere!r}. Leaves with generators: "
            f"{[leaf for _, leaf in self.leaf_generators]}."
        )

    def __str__(self) -> str:
        relators = ", ".join(format_word(relator) for relator in self.relators)
        return f"< {', '.join(self.generators)} | {relators} >"


def fundamental_group(invariant: SeifertInvariant) -> GroupPresentation:
    """
    Presentation of the fundamental group of the Seifert fibered space.

    Parameters
    ----------
    invariant : SeifertInvariant
        from a star-shaped negative definite plumbing

    Returns
    -------
    GroupPresentation
        generators ``q0, ..., qn, h`` and relators ``q0 q1 ... qn``, ``[h, qi]``,
        ``q0 h^-b0`` and ``qi^alpha_i h^beta_i``. A generator whose leg is a single
        sphere is mapped to that sphere

    Note
    ----
    The central relator is ``q0 = h^b0``. With this sign the abelianization has order
    ``|det|`` of the intersection matrix. :func:`printed_central_relator` gives the
    other sign.
    """
    n = len(invariant.pairs)
    legs = [f"q{i}" for i in range(1, n + 1)]
    generators = ("q0", *legs, FIBER)
    relators: list[Word] = [reduce_word((generator, 1) for generator in ("q0", *legs))]
    for generator in ("q0", *legs):
        relators.append(((FIBER, 1), (generator, 1), (FIBER, -1), (generator, -1)))
    relators.append(reduce_word((("q0", 1), (FIBER, -invariant.central))))
    for generator, (alpha, beta) in zip(legs, invariant.pairs):
        relators.append(((generator, alpha), (FIBER, beta)))
    leaf_generators = tuple(
        (generator, leg.leaf)
        for generator, leg in zip(legs, invariant.legs)
        if len(leg.vertices) == 1
    )
    return GroupPresentation(
        generators=generators,
        relators=tuple(relators),
        leaf_generators=leaf_generators,
    )


def printed_central_relator(invariant: SeifertInvariant) -> Word:
    """
    ``q0 h^b0``, the central relator for the central pair ``(1, b0)``.
    """
    return reduce_word((("q0", 1), (FIBER, invariant.central)))


def relation_matrix(
    presentation: GroupPresentation, relators: Sequence[Word] | None = None
) -> list[list[int]]:
    """
    Exponent sums: one row per relator, one column per generator.
    """
    relators = presentation.relators if relators is None else relators
    rows = []
    for relator in relators:
        sums = exponent_sums(relator)
        rows.append([sums.get(generator, 0) for generator in presentation.generators])
    return rows


def abelianization(
    presentation: GroupPresentation,
    trivial: Iterable[str] = (),
    substitutions: Mapping[str, Word] | None = None,
) -> AbelianGroup:
    """
    The abelianized group, computed from the Smith normal form of the exponent sums.
    Generators in `trivial` are set to 1 and `substitutions` are added as relators
    ``generator^-1 word``.
    """
    extra: list[Word] = [((generator, 1),) for generator in trivial]
    for generator, word in (substitutions or {}).items():
        extra.append(reduce_word(((generator, -1),) + tuple(word)))
    rows = relation_matrix(presentation, list(presentation.relators) + extra)
    if not rows:
        return AbelianGroup(
            invariant_factors=(), free_rank=len(presentation.generators)
        )
    return cokernel(rows)
