"""
Deduce that the boundary's fundamental group dies in the plumbing's complement.

Geometric facts say that a normal circle to a leaf sphere bounds a disk in the
complement (kill), or that the normal circles to two leaves are homotopic there
(identify). Each fact is first checked homologically against the configuration. The
facts are then pushed through the presentation by a fixed deterministic loop, and every
conclusion goes into a log which :func:`replay_deductions` re-checks from scratch.
"""

from __future__ import annotations
from dataclasses import dataclass, field
from functools import reduce
import logging
from math import gcd
from typing import Literal, Optional, Sequence

from blowdown.blowup.configuration import Configuration, UnknownCurveError
from blowdown.kernel.smith import AbelianGroup
from blowdown.plumbing.graph import PlumbingGraph
from blowdown.plumbing.presentation import (
    GroupPresentation,
    Word,
    abelianization,
    cyclically_reduce,
    format_word,
    power_word,
    reduce_word,
)


logger = logging.getLogger(__name__)


class FactValidationError(ValueError):
    """
    A geometric fact doesn't match the homology of the configuration.
    """


########################################################################################
######################################## Facts #########################################
########################################################################################


@dataclass(frozen=True)
class KillFact:
    """
    The normal circle to `leaf` bounds a disk in the complement, through the sphere
    `witness` which meets `leaf` once and misses the rest of the plumbing.
    """

    leaf: str
    witness: str


@dataclass(frozen=True)
class IdentifyFact:
    """
    The normal circles to `leaves` cobound an annulus in `witness`, which meets each
    leaf once. `also_meets` lists other plumbing spheres the witness is known to meet
    once.
    """

    leaves: tuple[str, str]
    witness: str
    also_meets: tuple[str, ...] = ()


@dataclass(frozen=True)
class GeometricFacts:
    kills: tuple[KillFact, ...] = ()
    identifications: tuple[IdentifyFact, ...] = ()

    def __len__(self) -> int:
        return len(self.kills) + len(self.identifications)


def _witness_products(
    witness: str, config: Configuration, plumbing: PlumbingGraph
) -> dict[str, int]:
    try:
        witness_class = config.curve(witness).homology
    except UnknownCurveError as exception:
        raise FactValidationError(f"Witness {witness!r} isn't a curve: {exception}")
    if witness in {vertex.curve for vertex in plumbing.vertices}:
        raise FactValidationError(
            f"Witness {witness!r} is a sphere of the plumbing. It must be in the "
            "complement."
        )
    return {
        vertex.name: witness_class.pairing(vertex.homology)
        for vertex in plumbing.vertices
    }


def _check_leaf(leaf: str, presentation: GroupPresentation) -> str:
    try:
        return presentation.generator_of_leaf(leaf)
    except KeyError:
        raise FactValidationError(
            f"{leaf!r} isn't the only sphere of its leg, so no generator of the "
            "presentation is a normal circle to it. Facts can only name such leaves: "
            f"{[leaf for _, leaf in presentation.leaf_generators]}."
        ) from None


def validate_facts(
    facts: GeometricFacts,
    config: Configuration,
    plumbing: PlumbingGraph,
    presentation: GroupPresentation,
) -> list[str]:
    """
    Checks every fact against the homology classes of the configuration.

    Returns
    -------
    list[str]
        caveats: crossings declared through ``also_meets``

    Raises
    ------
    FactValidationError
        if a witness meets a leaf other than once, meets another plumbing sphere without
        declaring it, or if a leaf has no generator
    """
    caveats = []
    for fact in facts.kills:
        _check_leaf(fact.leaf, presentation)
        products = _witness_products(fact.witness, config, plumbing)
        for sphere, product in products.items():
            expected = 1 if sphere == fact.leaf else 0
            if product != expected:
                raise FactValidationError(
                    f"Kill {fact.leaf} via {fact.witness}: {fact.witness} . {sphere} = "
                    f"{product}, expected {expected}."
                )
    for fact in facts.identifications:
        a, b = fact.leaves
        for leaf in fact.leaves:
            _check_leaf(leaf, presentation)
        leaf_product = plumbing.vertex(a).homology.pairing(plumbing.vertex(b).homology)
        if leaf_product != 0:
            raise FactValidationError(
                f"Identify {a} ~ {b}: the leaves meet ({a} . {b} = {leaf_product}), "
                "expected 0."
            )
        products = _witness_products(fact.witness, config, plumbing)
        for sphere in fact.also_meets:
            if sphere in fact.leaves or sphere not in products:
                raise FactValidationError(
                    f"Identify {a} ~ {b}: also_meets names {sphere!r}, which isn't "
                    "another sphere of the plumbing."
                )
        for sphere, product in products.items():
            expected = 1 if sphere in fact.leaves or sphere in fact.also_meets else 0
            if product != expected:
                raise FactValidationError(
                    f"Identify {a} ~ {b} via {fact.witness}: {fact.witness} . {sphere} "
                    f"= {product}, expected {expected}."
                )
        for sphere in fact.also_meets:
            caveats.append(
                f"{fact.witness} also meets {sphere} once ({fact.witness} . {sphere} = "
                f"1). The annulus between the normal circles to {a} and {b} must avoid "
                f"{sphere}."
            )
    return caveats


########################################################################################
###################################### Deductions ######################################
########################################################################################


DeductionKind = Literal["kill", "identify", "power", "eliminate", "derived"]


@dataclass(frozen=True)
class Deduction:
    """
    One step of the log: `generator` equals `value` in the quotient.

    Parameters
    ----------
    kind : DeductionKind
        ``"kill"`` and ``"identify"`` come from geometric facts. ``"power"``: relators
        which are powers of `generator` have exponents with gcd 1. ``"eliminate"``:
        `relator` has `generator` exactly once, so it's solved for `generator`.
        ``"derived"``: an eliminated generator's value became trivial
    generator : str
        the generator this step is about
    value : Word
        what `generator` equals. Empty for 1
    reason : str
        human-readable justification
    relator : Word, optional
        the relator used by an ``"eliminate"`` step, as it read at that point
    exponents : tuple[int, ...], optional
        the exponents used by a ``"power"`` step
    """

    kind: DeductionKind
    generator: str
    value: Word
    reason: str
    relator: Word = ()
    exponents: tuple[int, ...] = ()

    def __str__(self) -> str:
        return f"{self.generator} = {format_word(self.value)}  [{self.reason}]"


@dataclass(frozen=True)
class TrivialityResult:
    """
    Outcome of :func:`quotient_triviality`.

    Parameters
    ----------
    trivial : bool
        whether every generator was shown to be trivial
    deductions : tuple[Deduction, ...]
        the log, in order
    caveats : tuple[str, ...]
        declared crossings of witnesses
    residual : GroupPresentation | None
        remaining generators and relators if the deduction stalled
    abelianization : AbelianGroup | None
        abelianization of the residual quotient if the deduction stalled
    replayed : bool
        whether :func:`replay_deductions` accepted the log
    """

    trivial: bool
    deductions: tuple[Deduction, ...]
    caveats: tuple[str, ...] = ()
    residual: Optional[GroupPresentation] = None
    abelianization: Optional[AbelianGroup] = None
    replayed: bool = False


@dataclass
class _State:
    """
    Mutable state of one run of the simplifier or of the replay checker.
    """

    generators: tuple[str, ...]
    relators: list[Word]
    trivial: set[str] = field(default_factory=set)
    substitutions: dict[str, Word] = field(default_factory=dict)

    def resolve(self, generator: str) -> Word:
        if generator in self.trivial:
            return ()
        if generator in self.substitutions:
            return self.rewrite(self.substitutions[generator])
        return ((generator, 1),)

    def rewrite(self, word: Word) -> Word:
        pieces = []
        for generator, exponent in word:
            pieces.extend(power_word(self.resolve(generator), exponent))
        return reduce_word(pieces)

    def current_relators(self) -> list[Word]:
        rewritten = (
            cyclically_reduce(self.rewrite(relator)) for relator in self.relators
        )
        return [relator for relator in rewritten if relator]

    def free_generators(self) -> list[str]:
        return [
            generator
            for generator in self.generators
            if generator not in self.trivial and generator not in self.substitutions
        ]

    def is_trivial(self) -> bool:
        return all(not self.resolve(generator) for generator in self.generators)


def _single_generator_powers(relators: Sequence[Word]) -> dict[str, list[int]]:
    powers: dict[str, list[int]] = {}
    for relator in relators:
        if len(relator) == 1:
            generator, exponent = relator[0]
            powers.setdefault(generator, []).append(exponent)
    return powers


def _rotate_to(relator: Word, position: int) -> tuple[int, Word]:
    """
    Writes the cyclic word `relator` as ``g^e C`` where ``g^e`` is at `position`.
    Returns ``(e, C)``.
    """
    _, exponent = relator[position]
    rest = relator[position + 1 :] + relator[:position]
    return exponent, rest


def _find_elimination(state: _State) -> Optional[tuple[str, Word, int, Word]]:
    """
    Scans free generators from last to first for a relator of at least two generators
    in which the generator appears exactly once, to the power +-1.
    """
    readings = [cyclically_reduce(state.rewrite(relator)) for relator in state.relators]
    for generator in reversed(state.free_generators()):
        for index, relator in enumerate(readings):
            if len({g for g, _ in relator}) < 2:
                continue
            positions = [i for i, (g, _) in enumerate(relator) if g == generator]
            if len(positions) != 1 or abs(relator[positions[0]][1]) != 1:
                continue
            exponent, rest = _rotate_to(relator, positions[0])
            # g^e C = 1, so g = C^-e
            return generator, power_word(rest, -exponent), index, relator
    return None


def _log_derived(state: _State, deductions: list[Deduction], already: set[str]):
    for generator in state.substitutions:
        if generator not in already and not state.resolve(generator):
            already.add(generator)
            deductions.append(
                Deduction(
                    kind="derived",
                    generator=generator,
                    value=(),
                    reason=(
                        f"{generator} = {format_word(state.substitutions[generator])} "
                        "and that is now trivial"
                    ),
                )
            )


def quotient_triviality(
    presentation: GroupPresentation,
    facts: GeometricFacts,
    config: Configuration,
    plumbing: PlumbingGraph,
    max_rounds: int = 1_000,
) -> TrivialityResult:
    """
    Tries to show that the image of the boundary's fundamental group in the complement
    of the plumbing is trivial.

    Parameters
    ----------
    presentation : GroupPresentation
        from :func:`blowdown.plumbing.presentation.fundamental_group`
    facts : GeometricFacts
        kills and identifications of leaf generators
    config : Configuration
        configuration the plumbing lives in. Witnesses are curves of it
    plumbing : PlumbingGraph
        the plumbing
    max_rounds : int, optional
        safety cap on simplification rounds, by default 1_000

    Returns
    -------
    TrivialityResult
        ``trivial=True`` with a replayed deduction log, or ``trivial=False`` with the
        residual presentation and its abelianization. Failure doesn't prove the group is
        nontrivial

    Raises
    ------
    FactValidationError
        if a fact doesn't match the homology of the configuration
    """
    caveats = validate_facts(facts, config, plumbing, presentation)
    state = _State(
        generators=presentation.generators, relators=list(presentation.relators)
    )
    deductions: list[Deduction] = []
    derived: set[str] = set()

    for fact in facts.kills:
        generator = presentation.generator_of_leaf(fact.leaf)
        state.trivial.add(generator)
        deductions.append(
            Deduction(
                kind="kill",
                generator=generator,
                value=(),
                reason=(
                    f"normal circle to {fact.leaf} bounds a disk through {fact.witness}"
                ),
            )
        )
    for fact in facts.identifications:
        first, second = sorted(
            (presentation.generator_of_leaf(leaf) for leaf in fact.leaves),
            key=presentation.generators.index,
        )
        if not state.resolve(first):
            target, value = second, ()
        elif not state.resolve(second):
            target, value = first, ()
        else:
            target, value = second, ((first, 1),)
        if value:
            state.substitutions[target] = value
        else:
            state.trivial.add(target)
        deductions.append(
            Deduction(
                kind="identify",
                generator=target,
                value=value,
                reason=(
                    f"normal circles to {fact.leaves[0]} and {fact.leaves[1]} cobound "
                    f"an annulus in {fact.witness}, and {first} ~ {second}"
                ),
            )
        )

    for _ in range(max_rounds):
        _log_derived(state, deductions, derived)
        if state.is_trivial():
            break
        relators = state.current_relators()
        powers = _single_generator_powers(relators)
        progressed = False
        for generator in state.free_generators():
            exponents = powers.get(generator, [])
            if exponents and reduce(gcd, (abs(e) for e in exponents)) == 1:
                state.trivial.add(generator)
                listed = ", ".join(str(abs(exponent)) for exponent in exponents)
                deductions.append(
                    Deduction(
                        kind="power",
                        generator=generator,
                        value=(),
                        reason=f"{generator} has order dividing gcd({listed}) = 1",
                        exponents=tuple(exponents),
                    )
                )
                progressed = True
        if progressed:
            continue
        elimination = _find_elimination(state)
        if elimination is None:
            break
        generator, value, index, relator = elimination
        del state.relators[index]
        state.substitutions[generator] = value
        deductions.append(
            Deduction(
                kind="eliminate",
                generator=generator,
                value=value,
                reason=f"solve {format_word(relator)} = 1 for {generator}",
                relator=relator,
            )
        )
    for deduction in deductions:
        logger.debug("%s", deduction)

    if state.is_trivial():
        replayed = replay_deductions(presentation, deductions)
        if not replayed:
            raise RuntimeError("The deduction log failed its replay. This is a bug.")
        logger.info("Quotient is trivial after %d deductions", len(deductions))
        return TrivialityResult(
            trivial=True,
            deductions=tuple(deductions),
            caveats=tuple(caveats),
            replayed=True,
        )
    residual = GroupPresentation(
        generators=tuple(state.free_generators()),
        relators=tuple(state.current_relators()),
    )
    group = abelianization(presentation, state.trivial, state.substitutions)
    logger.warning(
        "Deduction stalled with %d free generators. Abelianization: %s",
        len(residual.generators),
        group,
    )
    return TrivialityResult(
        trivial=False,
        deductions=tuple(deductions),
        caveats=tuple(caveats),
        residual=residual,
        abelianization=group,
    )


########################################################################################
######################################## Replay ########################################
########################################################################################


def replay_deductions(
    presentation: GroupPresentation, deductions: Sequence[Deduction]
) -> bool:
    """
    Re-checks a deduction log against the original presentation.

    Facts (``"kill"``, ``"identify"``) are taken as given. Every other step must follow
    from the relators as they read at that point, and at the end every generator must
    be trivial.
    """
    state = _State(
        generators=presentation.generators, relators=list(presentation.relators)
    )
    for deduction in deductions:
        generator = deduction.generator
        if generator not in presentation.generators:
            return False
        if deduction.kind in ("kill", "identify"):
            if deduction.value:
                state.substitutions[generator] = deduction.value
            else:
                state.trivial.add(generator)
        elif deduction.kind == "power":
            available = [
                relator[0][1]
                for relator in state.current_relators()
                if len(relator) == 1 and relator[0][0] == generator
            ]
            for exponent in deduction.exponents:
                if exponent not in available:
                    return False
                available.remove(exponent)
            if not deduction.exponents:
                return False
            if reduce(gcd, (abs(e) for e in deduction.exponents)) != 1:
                return False
            state.trivial.add(generator)
        elif deduction.kind == "eliminate":
            readings = [cyclically_reduce(state.rewrite(r)) for r in state.relators]
            if deduction.relator not in readings:
                return False
            relator = deduction.relator
            positions = [i for i, (g, _) in enumerate(relator) if g == generator]
            if len(positions) != 1 or abs(relator[positions[0]][1]) != 1:
                return False
            exponent, rest = _rotate_to(relator, positions[0])
            if power_word(rest, -exponent) != deduction.value:
                return False
            del state.relators[readings.index(relator)]
            state.substitutions[generator] = deduction.value
        elif deduction.kind == "derived":
            if state.resolve(generator):
                return False
        else:
            return False
    return state.is_trivial()
