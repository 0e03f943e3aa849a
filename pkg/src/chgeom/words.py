"""Reduced words in a finite generating set and word-ball enumeration."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import InvalidGenerators, GeometryError
from .isometries import EPS_GRP, GroupElement, validate


@dataclass(frozen=True)
class GroupPresentation:
    """Labelled generators, each validated as an element of SU(2,1)."""

    labels: tuple
    elements: tuple

    def __post_init__(self):
        if not self.labels:
            raise InvalidGenerators("need at least one generator")
        if len(set(self.labels)) != len(self.labels):
            raise InvalidGenerators("generator labels must be unique")
        if len(self.labels) != len(self.elements):
            raise InvalidGenerators("one label per generator")

    @classmethod
    def from_matrices(cls, items, eps_grp=EPS_GRP):
        """Build from ``(label, matrix)`` pairs, validating every matrix."""
        labels, elements = [], []
        for label, m in items:
            try:
                elements.append(validate(m, eps_grp))
            except GeometryError as exc:
                raise InvalidGenerators(f"generator {label!r}: {exc}") from exc
            labels.append(str(label))
        return cls(tuple(labels), tuple(elements))

    @classmethod
    def trusted(cls, elements, labels=None):
        """Wrap elements that are already known to be valid."""
        elements = tuple(e if isinstance(e, GroupElement) else GroupElement(e) for e in elements)
        if labels is None:
            labels = tuple(f"g{i + 1}" for i in range(len(elements)))
        return cls(tuple(labels), elements)

    def __len__(self):
        return len(self.elements)

    def letters(self):
        """All letters (index, exponent) in canonical order."""
        return [(i, e) for i in range(len(self)) for e in (1, -1)]


@dataclass(frozen=True)
class Word:
    letters: tuple

    def __len__(self):
        return len(self.letters)

    def label(self, labels):
        parts = []
        for i, e in self.letters:
            parts.append(labels[i] if e == 1 else f"{labels[i]}^-1")
        return " ".join(parts)

    @classmethod
    def parse(cls, text, labels):
        index = {lab: i for i, lab in enumerate(labels)}
        letters = []
        for tok in text.split():
            if tok.endswith("^-1"):
                letters.append((index[tok[:-3]], -1))
            else:
                letters.append((index[tok], 1))
        return cls(tuple(letters))

    def evaluate(self, presentation):
        m = np.eye(3, dtype=complex)
        for i, e in self.letters:
            g = presentation.elements[i]
            m = m @ (g.matrix if e == 1 else g.inv.matrix)
        return GroupElement(m)

    def order_key(self, presentation):
        ranks = {letter: r for r, letter in enumerate(presentation.letters())}
        return (len(self.letters), tuple(ranks[x] for x in self.letters))


def _extend(presentation, level, mats):
    letters = presentation.letters()
    gen = {(i, e): (presentation.elements[i].matrix if e == 1 else presentation.elements[i].inv.matrix)
           for i, e in letters}
    new_level, new_mats = [], []
    for w, m in zip(level, mats):
        last = w[-1]
        for x in letters:
            if x[0] == last[0] and x[1] == -last[1]:
                continue
            new_level.append(w + (x,))
            new_mats.append(m @ gen[x])
    return new_level, new_mats


def _ball_from(presentation, first, radius):
    i, e = first
    g = presentation.elements[i]
    level = [(first,)]
    mats = [g.matrix if e == 1 else g.inv.matrix]
    for length in range(1, radius + 1):
        for w, m in zip(level, mats):
            yield Word(w), GroupElement(m)
        if length < radius:
            level, mats = _extend(presentation, level, mats)


def word_ball(presentation, radius):
    """All reduced words of length 1..radius with their matrices.

    Words come out in length-lexicographic order with letters ordered as
    g1, g1^-1, g2, g2^-1, ...; the identity word is not included.
    """
    if radius < 1:
        raise ValueError("radius must be at least 1")
    letters = presentation.letters()
    gens = {x: (presentation.elements[x[0]].matrix if x[1] == 1
                else presentation.elements[x[0]].inv.matrix) for x in letters}
    level = [(x,) for x in letters]
    mats = [gens[x] for x in letters]
    for length in range(1, radius + 1):
        for w, m in zip(level, mats):
            yield Word(w), GroupElement(m)
        if length < radius:
            level, mats = _extend(presentation, level, mats)


def ball_size(n_generators, radius):
    k = 2 * n_generators
    return sum(k * (k - 1) ** (r - 1) for r in range(1, radius + 1))


def scan_ball(presentation, radius, visit, jobs=1):
    """Run ``visit(word, element)`` over the ball, partitioned by first letter.

    Returns the per-partition results in canonical letter order, so callers
    can reduce them deterministically whatever ``jobs`` is.
    """
    letters = presentation.letters()

    def run(first):
        return [visit(w, m) for w, m in _ball_from(presentation, first, radius)]

    if jobs <= 1:
        return [run(x) for x in letters]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(run, letters))
