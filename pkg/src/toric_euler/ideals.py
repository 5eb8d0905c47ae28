"""Squarefree monomial ideals attached to a fan.

A squarefree monomial ideal in S = K[x_1..x_d] is stored by the supports of
its minimal generators. The Stanley-Reisner ideal I_Sigma, the irrelevant
ideal B(Sigma) and their Alexander duals all live here, together with the
fine-graded invariants of their quotients, which are computed through
Hochster's formula rather than from explicit resolutions. The shift between
an ideal and its quotient, Tor_i(B, K) = Tor_{i+1}(S/B, K), is left to the
caller: :func:`tor_dim` always refers to the quotient.
"""

from __future__ import annotations

import functools
import itertools
import logging
from collections import defaultdict
from typing import Iterable, Sequence

import pydantic
from pydantic import ConfigDict, Field

from toric_euler.class_group import DivisorClass, class_group_presentation, class_of
from toric_euler.fan import Fan, face_complex, is_face, require_valid_fan
from toric_euler.homology import Complex, induced_subcomplex, reduced_betti

logger = logging.getLogger(__name__)

FineWeight = tuple[int, ...]


def _ordered(supports: Iterable[frozenset[int]]) -> list[tuple[int, ...]]:
    return sorted((tuple(sorted(s)) for s in supports), key=lambda s: (len(s), s))


def _minimal(supports: Iterable[frozenset[int]]) -> frozenset[frozenset[int]]:
    candidates = set(supports)
    return frozenset(s for s in candidates if not any(t < s for t in candidates))


class SquarefreeIdeal(pydantic.BaseModel):
    """A squarefree monomial ideal by the supports of its minimal generators.

    ``gens == {}`` is the zero ideal and ``gens == {frozenset()}`` the unit ideal.
    """

    model_config = ConfigDict(frozen=True)

    d: int = Field(ge=0, description="Number of variables")
    gens: frozenset[frozenset[int]] = Field(description="Supports of the minimal monomial generators")

    @pydantic.model_validator(mode="after")
    def _check_gens(self) -> SquarefreeIdeal:
        for gen in self.gens:
            if any(i < 0 or i >= self.d for i in gen):
                raise ValueError(f"Generator {sorted(gen)} uses variables outside 0..{self.d - 1}.")
            if any(other < gen for other in self.gens):
                raise ValueError(f"Generators must form an antichain; {sorted(gen)} is not minimal.")
        return self

    @classmethod
    def from_supports(cls, d: int, supports: Iterable[Iterable[int]]) -> SquarefreeIdeal:
        """Builds the ideal generated by the given squarefree monomials, dropping redundant ones."""
        return cls(d=d, gens=_minimal(frozenset(s) for s in supports))

    def sorted_gens(self) -> list[tuple[int, ...]]:
        """Generator supports by size, then lexicographically."""
        return _ordered(self.gens)

    def contains(self, support: Iterable[int]) -> bool:
        """Whether the squarefree monomial with this support lies in the ideal."""
        support = frozenset(support)
        return any(gen <= support for gen in self.gens)

    @property
    def is_unit(self) -> bool:
        return frozenset() in self.gens


class ChowPresentation(pydantic.BaseModel):
    """Stanley-Reisner generators plus the n linear forms sum_rho <e_i, v_rho> x_rho."""

    model_config = ConfigDict(frozen=True)

    stanley_reisner_gens: tuple[tuple[int, ...], ...]
    linear_forms: tuple[tuple[int, ...], ...]


def support(a: Sequence[int]) -> frozenset[int]:
    return frozenset(i for i, value in enumerate(a) if value != 0)


def check_fine_weight(a: Sequence[int], d: int) -> FineWeight:
    weight = tuple(int(x) for x in a)
    if len(weight) != d:
        raise ValueError(f"Fine weight {weight} has length {len(weight)}, expected {d}.")
    if any(x not in (0, 1) for x in weight):
        raise ValueError(f"Fine weight {weight} is not squarefree; entries must be 0 or 1.")
    return weight


def complement(a: Sequence[int]) -> FineWeight:
    """1 - m for a fine weight m."""
    return tuple(1 - x for x in a)


def fine_weights(d: int) -> Iterable[FineWeight]:
    """All of Z = {0,1}^d, in lexicographic order."""
    return itertools.product((0, 1), repeat=d)


def stanley_reisner(fan: Fan) -> SquarefreeIdeal:
    """I_Sigma, generated by the minimal nonfaces of P_Sigma."""
    return _stanley_reisner(require_valid_fan(fan))


@functools.lru_cache(maxsize=128)
def _stanley_reisner(fan: Fan) -> SquarefreeIdeal:
    faces = face_complex(fan)
    minimal_nonfaces = []
    # a minimal nonface has every facet of its boundary in P_Sigma, so its size is at most n + 1
    for size in range(1, fan.n + 2):
        for subset in itertools.combinations(range(fan.d), size):
            candidate = frozenset(subset)
            if candidate in faces.faces:
                continue
            if all(candidate - {i} in faces.faces for i in candidate):
                minimal_nonfaces.append(candidate)
    return SquarefreeIdeal(d=fan.d, gens=frozenset(minimal_nonfaces))


def irrelevant_ideal(fan: Fan) -> SquarefreeIdeal:
    """B(Sigma), generated by the monomials complementary to the maximal cones."""
    fan = require_valid_fan(fan)
    everything = frozenset(range(fan.d))
    return SquarefreeIdeal.from_supports(fan.d, (everything - cone for cone in fan.max_cones))


def alexander_dual(ideal: SquarefreeIdeal) -> SquarefreeIdeal:
    """The ideal generated by the minimal transversals of the generator supports.

    Transversals are built one generator at a time: every partial hitting set
    that misses the next generator is extended by each of its variables, and
    non-minimal sets are pruned after each step.
    """
    if ideal.d == 0:
        raise ValueError("The Alexander dual needs at least one variable.")
    return _alexander_dual(ideal)


@functools.lru_cache(maxsize=1024)
def _alexander_dual(ideal: SquarefreeIdeal) -> SquarefreeIdeal:
    transversals: frozenset[frozenset[int]] = frozenset([frozenset()])
    for gen in sorted(ideal.gens, key=lambda g: (len(g), sorted(g))):
        extended: set[frozenset[int]] = set()
        for partial in transversals:
            if partial & gen:
                extended.add(partial)
            else:
                extended.update(partial | {v} for v in gen)
        transversals = _minimal(extended)
    return SquarefreeIdeal(d=ideal.d, gens=transversals)


def stanley_reisner_complex(ideal: SquarefreeIdeal) -> Complex:
    """The complex whose faces are the supports of monomials outside ``ideal``.

    Its facets are the complements of the generators of the Alexander dual.
    """
    everything = frozenset(range(ideal.d))
    if ideal.is_unit:
        return Complex.void(everything)
    if not ideal.gens:
        return Complex(vertices=everything, facets=frozenset([everything]))
    dual = alexander_dual(ideal)
    return Complex(vertices=everything, facets=frozenset(everything - gen for gen in dual.gens))


def sr_dim(fan: Fan, a: Sequence[int]) -> int:
    """dim (S/I_Sigma)_a for a squarefree degree a: 1 when support(a) is a face of P_Sigma."""
    fan = require_valid_fan(fan)
    weight = check_fine_weight(a, fan.d)
    return 1 if is_face(face_complex(fan), support(weight)) else 0


def tor_dim(ideal: SquarefreeIdeal, i: int, a: Sequence[int]) -> int:
    """dim Tor_i(S/ideal, K)_a by Hochster's formula.

    For a squarefree degree a with support W this is the rank of
    H~^{|a| - i - 1} of the Stanley-Reisner complex restricted to W.
    """
    if i < 0:
        raise ValueError(f"Homological index must be nonnegative, got {i}.")
    weight = check_fine_weight(a, ideal.d)
    if ideal.is_unit:
        return 0
    if i == 0:
        return 1 if not any(weight) else 0
    degree = sum(weight) - i - 1
    if degree < -1:
        return 0
    restricted = induced_subcomplex(stanley_reisner_complex(ideal), support(weight))
    return reduced_betti(restricted)[degree]


def ext_dim(fan: Fan, j: int, m: Sequence[int]) -> int:
    """dim Ext^j(S/I_Sigma, S)_{-m} for m in {0,1}^d.

    Obtained from the Tor of the irrelevant ideal in degree m: the two agree
    with homological index i = |m| - j, and Tor_i of the ideal is Tor_{i+1}
    of its quotient.
    """
    fan = require_valid_fan(fan)
    weight = check_fine_weight(m, fan.d)
    i = sum(weight) - j
    if i < 0:
        return 0
    return tor_dim(irrelevant_ideal(fan), i + 1, weight)


def class_graded_tor(fan: Fan, ideal: SquarefreeIdeal, i: int) -> dict[DivisorClass, int]:
    """Tor_i(S/ideal, K) summed over fine weights m in {0,1}^d with the same class phi(m)."""
    fan = require_valid_fan(fan)
    if ideal.d != fan.d:
        raise ValueError(f"Ideal lives in {ideal.d} variables but the fan has {fan.d} rays.")
    presentation = class_group_presentation(fan)
    graded: dict[DivisorClass, int] = defaultdict(int)
    for weight in fine_weights(fan.d):
        value = tor_dim(ideal, i, weight)
        if value:
            graded[class_of(presentation, weight)] += value
    return dict(graded)


def chow_presentation(fan: Fan) -> ChowPresentation:
    """Generators of the rational Chow ring: I_Sigma plus the linear relations from M."""
    fan = require_valid_fan(fan)
    forms = tuple(tuple(fan.rays[rho][i] for rho in range(fan.d)) for i in range(fan.n))
    return ChowPresentation(
        stanley_reisner_gens=tuple(stanley_reisner(fan).sorted_gens()),
        linear_forms=forms,
    )
