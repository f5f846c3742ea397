"""Free-group words, finitely presented groups and homomorphisms between them.

Presentation files are line oriented::

    # comment
    group trefoil
    gen y1 y2
    rel y1 y2 y1 y2^-1 y1^-1 y2^-1
    meridian y1
    wirtinger

``wirtinger`` marks presentations whose generators are all meridians (hence
mutually conjugate); the representation search may then restrict every
generator image to one conjugacy class.  Words are whitespace separated
tokens ``g`` or ``g^k``; parenthesised blocks ``( ... )^k`` are accepted on
input and expanded.

Homomorphism files use ``map <source gen> = <target word>`` lines, plus
optional ``source <name>``, ``target <name>`` and
``witness <target gen> = <source word>`` lines.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from importlib import resources
from typing import Iterable, Optional

from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors


class PresentationError(ValueError):
    """Malformed presentation or homomorphism text."""


def free_reduce(letters: Iterable) -> tuple:
    """Freely reduce a sequence of ``(generator, exponent)`` pairs."""
    out = []
    for gen, exp in letters:
        exp = int(exp)
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            e = out[-1][1] + exp
            out.pop()
            if e:
                out.append((gen, e))
        else:
            out.append((gen, exp))
    return tuple(out)


class FreeWord:
    """Freely reduced word, stored as ``(generator index, exponent)`` syllables."""

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable = ()):
        self.letters = free_reduce(letters)
        self._hash = hash(self.letters)

    @classmethod
    def gen(cls, i: int, exp: int = 1) -> FreeWord:
        return cls([(i, exp)])

    def __mul__(self, other: FreeWord) -> FreeWord:
        return FreeWord(self.letters + other.letters)

    def inverse(self) -> FreeWord:
        return FreeWord((g, -e) for g, e in reversed(self.letters))

    def __pow__(self, k: int) -> FreeWord:
        base = self if k >= 0 else self.inverse()
        return FreeWord(base.letters * abs(k))

    def __len__(self):
        return sum(abs(e) for _, e in self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other):
        return isinstance(other, FreeWord) and self.letters == other.letters

    def __lt__(self, other):
        return self.letters < other.letters

    def __hash__(self):
        return self._hash

    def exponent_sum(self, gen: Optional[int] = None) -> int:
        if gen is None:
            return sum(e for _, e in self.letters)
        return sum(e for g, e in self.letters if g == gen)

    def generators(self) -> set:
        return {g for g, _ in self.letters}

    def occurrences(self, gen: int) -> int:
        """Number of letters x^{+-1} of ``gen`` in the expanded word."""
        return sum(abs(e) for g, e in self.letters if g == gen)

    def expanded(self) -> list:
        """Letters as ``(generator, +1 | -1)`` pairs."""
        return [(g, 1 if e > 0 else -1) for g, e in self.letters for _ in range(abs(e))]

    def cyclically_reduced(self) -> FreeWord:
        letters = list(self.letters)
        while len(letters) > 1 and letters[0][0] == letters[-1][0]:
            g, e = letters[0]
            e2 = letters[-1][1]
            letters = letters[1:-1]
            if e + e2:
                letters = [(g, e + e2)] + letters
        return FreeWord(letters)

    def substitute(self, images) -> FreeWord:
        """Replace generator ``i`` by ``images[i]`` (a FreeWord)."""
        parts = []
        for g, e in self.letters:
            img = images[g]
            if img is None:
                raise KeyError(g)
            parts.extend((img if e > 0 else img.inverse()).letters * abs(e))
        return FreeWord(parts)

    def format(self, names) -> str:
        if not self.letters:
            return "1"
        return " ".join(names[g] if e == 1 else "%s^%d" % (names[g], e) for g, e in self.letters)

    def __repr__(self):
        return "FreeWord(%s)" % (list(self.letters),)


_TOKEN = re.compile(r"\(|\)(?:\^-?\d+)?|[^\s()]+")


def parse_word(text: str, generators) -> FreeWord:
    """Parse a word over the named generators."""
    index = {name: i for i, name in enumerate(generators)}
    stack = [[]]
    for tok in _TOKEN.findall(text):
        if tok == "(":
            stack.append([])
        elif tok.startswith(")"):
            if len(stack) == 1:
                raise PresentationError("unbalanced ')' in %r" % text)
            inner = FreeWord(stack.pop())
            k = int(tok[2:]) if tok.startswith(")^") else 1
            if k == 0:
                raise PresentationError("zero exponent in %r" % text)
            stack[-1].extend((inner ** k).letters)
        elif tok in ("1", "e"):
            continue
        else:
            name, _, exp = tok.partition("^")
            if name not in index:
                raise PresentationError("unknown generator %r" % name)
            try:
                k = int(exp) if exp else 1
            except ValueError:
                raise PresentationError("malformed exponent in %r" % tok) from None
            if k == 0:
                raise PresentationError("zero exponent in %r" % tok)
            stack[-1].append((index[name], k))
    if len(stack) != 1:
        raise PresentationError("unbalanced '(' in %r" % text)
    return FreeWord(stack[0])


@dataclass(frozen=True)
class GroupPresentation:
    name: str
    generators: tuple
    relators: tuple
    meridian: Optional[int] = None
    wirtinger: bool = False
    notes: tuple = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(self.relators))
        if len(set(self.generators)) != len(self.generators):
            raise PresentationError("duplicate generator names")
        k = len(self.generators)
        for r in self.relators:
            if any(not 0 <= g < k for g, _ in r.letters):
                raise PresentationError("relator references a missing generator")
        if self.meridian is not None and not 0 <= self.meridian < k:
            raise PresentationError("meridian index out of range")

    @property
    def num_generators(self) -> int:
        return len(self.generators)

    @property
    def deficiency(self) -> int:
        return len(self.generators) - len(self.relators)

    def index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise PresentationError("unknown generator %r" % name) from None

    def word(self, text: str) -> FreeWord:
        return parse_word(text, self.generators)

    def format_word(self, w: FreeWord) -> str:
        return w.format(self.generators)

    def with_relators(self, relators, **changes) -> GroupPresentation:
        return replace(self, relators=tuple(relators), **changes)


def parse_presentation(text: str) -> GroupPresentation:
    name = "group"
    gens = []
    rel_lines = []
    meridian = None
    wirtinger = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "group":
            name = rest
        elif key == "gen":
            gens.extend(rest.split())
        elif key == "rel":
            rel_lines.append(rest)
        elif key == "meridian":
            meridian = rest
        elif key == "wirtinger":
            wirtinger = True
        else:
            raise PresentationError("line %d: unknown directive %r" % (lineno, key))
    if len(set(gens)) != len(gens):
        dup = sorted({g for g in gens if gens.count(g) > 1})
        raise PresentationError("duplicate generator names: %s" % ", ".join(dup))
    for g in gens:
        if not re.fullmatch(r"[^\s()^#]+", g) or g in ("1", "e"):
            raise PresentationError("bad generator name %r" % g)
    relators = [parse_word(r, gens) for r in rel_lines]
    mer = None
    if meridian is not None:
        if meridian not in gens:
            raise PresentationError("unknown meridian generator %r" % meridian)
        mer = gens.index(meridian)
    return GroupPresentation(name, tuple(gens), tuple(relators), mer, wirtinger)


def serialize_presentation(g: GroupPresentation) -> str:
    lines = ["group %s" % g.name, "gen " + " ".join(g.generators)]
    lines += ["rel " + g.format_word(r) for r in g.relators]
    if g.meridian is not None:
        lines.append("meridian %s" % g.generators[g.meridian])
    if g.wirtinger:
        lines.append("wirtinger")
    return "\n".join(lines) + "\n"


def load_presentation(path) -> GroupPresentation:
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read())


def fixture_text(filename: str) -> str:
    return resources.files("tapestry.fixtures").joinpath(filename).read_text(encoding="utf-8")


def load_fixture(name: str) -> GroupPresentation:
    """Load a shipped presentation such as ``"trefoil"`` or ``"kt_simplified.pres"``."""
    if not name.endswith(".pres"):
        name += ".pres"
    return parse_presentation(fixture_text(name))


@dataclass(frozen=True)
class GroupHom:
    source: GroupPresentation
    target: GroupPresentation
    images: tuple
    witnesses: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != self.source.num_generators:
            raise PresentationError("need one image per source generator")

    def __call__(self, w: FreeWord) -> FreeWord:
        return apply_homomorphism(self, w)


def apply_homomorphism(h: GroupHom, w: FreeWord) -> FreeWord:
    try:
        return w.substitute(h.images)
    except KeyError as exc:
        raise PresentationError("generator %s has no image" % h.source.generators[exc.args[0]]) from None


def identity_hom(g: GroupPresentation) -> GroupHom:
    return GroupHom(g, g, [FreeWord.gen(i) for i in range(g.num_generators)])


def parse_hom(text: str, source: GroupPresentation, target: GroupPresentation) -> GroupHom:
    images = [None] * source.num_generators
    witnesses = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        if key in ("source", "target"):
            expected = source if key == "source" else target
            if rest.strip() != expected.name:
                raise PresentationError("line %d: %s is %r, got presentation %r"
                                        % (lineno, key, rest.strip(), expected.name))
            continue
        if key not in ("map", "witness"):
            raise PresentationError("line %d: unknown directive %r" % (lineno, key))
        lhs, eq, rhs = rest.partition("=")
        if not eq:
            raise PresentationError("line %d: expected '='" % lineno)
        lhs = lhs.strip()
        if key == "map":
            images[source.index(lhs)] = target.word(rhs)
        else:
            witnesses[target.index(lhs)] = source.word(rhs)
    missing = [source.generators[i] for i, w in enumerate(images) if w is None]
    if missing:
        raise PresentationError("no image for generator(s) %s" % ", ".join(missing))
    return GroupHom(source, target, images, witnesses)


def load_hom_fixture(name: str, source: GroupPresentation, target: GroupPresentation) -> GroupHom:
    if not name.endswith(".hom"):
        name += ".hom"
    return parse_hom(fixture_text(name), source, target)


def relation_matrix(g: GroupPresentation) -> list:
    """Exponent-sum matrix: one row per relator, one column per generator."""
    return [[r.exponent_sum(j) for j in range(g.num_generators)] for r in g.relators]


def abelianization(g: GroupPresentation):
    """Return ``(torsion divisors, free rank)`` of the abelianized group."""
    k = g.num_generators
    rows = [row for row in relation_matrix(g) if any(row)]
    if not rows:
        return [], k
    factors = [abs(int(f)) for f in invariant_factors(Matrix(rows))]
    nonzero = [f for f in factors if f != 0]
    torsion = [f for f in nonzero if f != 1]
    return torsion, k - len(nonzero)


def simplify_presentation(g: GroupPresentation) -> GroupPresentation:
    """Tietze-eliminate generators that occur exactly once in some relator.

    Relators are scanned shortest first and the highest-index eligible
    generator is removed; the meridian is kept.  Relators are kept cyclically
    reduced, and empty or repeated ones are dropped.
    """
    names = list(g.generators)
    keep_name = names[g.meridian] if g.meridian is not None else None
    rels = _tidy([r.cyclically_reduced() for r in g.relators])
    while True:
        choice = None
        for ri in sorted(range(len(rels)), key=lambda i: (len(rels[i]), i)):
            r = rels[ri]
            eligible = [x for x in r.generators() if r.occurrences(x) == 1 and names[x] != keep_name]
            if eligible:
                choice = (ri, max(eligible))
                break
        if choice is None:
            break
        ri, x = choice
        r = rels[ri]
        pos = next(i for i, (gen, _) in enumerate(r.letters) if gen == x)
        u = FreeWord(r.letters[:pos])
        v = FreeWord(r.letters[pos + 1:])
        eps = r.letters[pos][1]
        # u x^eps v = 1
        solution = (u.inverse() * v.inverse()) if eps == 1 else (v * u)
        images = [FreeWord.gen(i) for i in range(len(names))]
        images[x] = solution
        others = [w.substitute(images).cyclically_reduced() for j, w in enumerate(rels) if j != ri]
        # renumber generators above x
        shift = [FreeWord.gen(i if i < x else i - 1) for i in range(len(names))]
        shift[x] = None
        rels = _tidy([w.substitute(shift) for w in others])
        del names[x]
    if len(names) == g.num_generators and rels == list(g.relators):
        return g
    meridian = names.index(keep_name) if keep_name is not None else None
    return GroupPresentation(g.name + "_simplified", tuple(names), tuple(rels), meridian, g.wirtinger)


def _tidy(rels):
    seen = set()
    out = []
    for r in rels:
        if r and r not in seen:
            seen.add(r)
            out.append(r)
    return out
