"""Planar tree monomials, formal linear combinations and a monomial order.

Trees are immutable and hashable.  A leaf is ``LEAF``; leaves are never
labeled, they are numbered left to right when a tree is rendered or
when it is used as a template for substitution.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
import re

from .ratlinalg import rat


@dataclass(frozen=True)
class Generator:
    name: str
    arity: int = 2
    degree: int = 0
    rank: int = 0

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError("generator arity must be positive")

    def __repr__(self):
        return f"Generator({self.name!r})"

    def __str__(self):
        return self.name


class Tree:
    __slots__ = ("label", "children", "arity", "weight", "_hash", "__dict__")

    def __init__(self, label=None, children=()):
        children = tuple(children)
        if label is None:
            if children:
                raise ValueError("a leaf has no children")
            self.arity, self.weight = 1, 0
        else:
            if len(children) != label.arity:
                raise ValueError(f"{label.name} takes {label.arity} inputs, got {len(children)}")
            self.arity = sum(c.arity for c in children)
            self.weight = 1 + sum(c.weight for c in children)
        self.label = label
        self.children = children
        self._hash = hash((label, children))

    @property
    def is_leaf(self):
        return self.label is None

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, Tree):
            return NotImplemented
        return self._hash == other._hash and self.label == other.label and self.children == other.children

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Tree({render(self)})"

    def __str__(self):
        return render(self)

    @cached_property
    def leaf_words(self):
        """Per leaf, left to right, the labels met on the way down from the root."""
        if self.is_leaf:
            return ((),)
        return tuple((self.label,) + w for c in self.children for w in c.leaf_words)

    @cached_property
    def encoding(self):
        """Preorder sequence of generator names, ``'|'`` for a leaf."""
        if self.is_leaf:
            return ("|",)
        out = [self.label.name]
        for c in self.children:
            out.extend(c.encoding)
        return tuple(out)

    @cached_property
    def order_key(self):
        words = tuple((len(w), tuple(g.rank for g in w)) for w in self.leaf_words)
        tie = tuple((-1, "") if x == "|" else (0, x) for x in self.encoding)
        ranks = tuple(-1 if t is None else t.rank for t in self.preorder_labels())
        return (self.weight, words, ranks, tie)

    def preorder_labels(self):
        if self.is_leaf:
            return [None]
        out = [self.label]
        for c in self.children:
            out.extend(c.preorder_labels())
        return out

    def vertices(self):
        """Yield (path, subtree) for every internal vertex in preorder.

        A path is the tuple of child indices leading from the root.
        """
        if self.is_leaf:
            return
        stack = [((), self)]
        while stack:
            path, t = stack.pop()
            yield path, t
            for k in range(len(t.children) - 1, -1, -1):
                c = t.children[k]
                if not c.is_leaf:
                    stack.append((path + (k,), c))

    def subtree(self, path):
        t = self
        for k in path:
            t = t.children[k]
        return t

    def replace(self, path, new):
        if not path:
            return new
        k = path[0]
        kids = list(self.children)
        kids[k] = kids[k].replace(path[1:], new)
        return Tree(self.label, kids)


LEAF = Tree()


def corolla(gen):
    return Tree(gen, [LEAF] * gen.arity)


def graft(outer, slot, inner):
    """Partial composition: plug ``inner`` into leaf ``slot`` (from 0) of ``outer``."""
    if not 0 <= slot < outer.arity:
        raise IndexError(f"slot {slot} out of range for arity {outer.arity}")
    return _graft(outer, slot, inner)


def _graft(t, slot, inner):
    if t.is_leaf:
        return inner
    kids = []
    for c in t.children:
        if 0 <= slot < c.arity:
            kids.append(_graft(c, slot, inner))
        else:
            kids.append(c)
        slot -= c.arity
    return Tree(t.label, kids)


def substitute(template, args):
    """Replace leaf k of ``template`` by ``args[k]``."""
    args = list(args)
    if len(args) != template.arity:
        raise ValueError("wrong number of arguments for substitution")
    it = iter(args)

    def go(t):
        if t.is_leaf:
            return next(it)
        return Tree(t.label, [go(c) for c in t.children])

    return go(template)


def match(pattern, tree):
    """Match ``pattern`` at the root of ``tree``.

    Returns the subtrees sitting at the pattern's leaves, or None.
    """
    out = []

    def go(p, t):
        if p.is_leaf:
            out.append(t)
            return True
        if t.is_leaf or p.label != t.label:
            return False
        return all(go(pc, tc) for pc, tc in zip(p.children, t.children))

    return out if go(pattern, tree) else None


def occurrences(pattern, tree):
    """Paths of all vertices of ``tree`` where ``pattern`` matches."""
    return [path for path, sub in tree.vertices() if match(pattern, sub) is not None]


def contains(tree, pattern):
    return any(match(pattern, sub) is not None for _, sub in tree.vertices())


def path_lex_compare(a, b):
    """Compare two monomials of equal arity: -1, 0 or 1.

    Monomials are compared by weight, then by their sequence of leaf path
    words (longer words first, then lexicographically by generator rank),
    with the preorder encoding as a final tie-break.
    """
    if a.arity != b.arity:
        raise ValueError(f"cannot compare arities {a.arity} and {b.arity}")
    ka, kb = a.order_key, b.order_key
    return (ka > kb) - (ka < kb)


def monomials(generators, arity):
    """All tree monomials of the given arity (generators of arity >= 2)."""
    generators = sorted(generators, key=lambda g: (-g.rank, g.name))
    if any(g.arity < 2 for g in generators):
        raise ValueError("enumeration needs generators of arity >= 2")
    cache = {}

    def go(n):
        if n in cache:
            return cache[n]
        res = [LEAF] if n == 1 else []
        for g in generators:
            for parts in _compositions(n, g.arity):
                for kids in product(*(go(k) for k in parts)):
                    res.append(Tree(g, kids))
        cache[n] = res
        return res

    return list(go(arity))


def _compositions(n, k):
    if k == 1:
        if n >= 1:
            yield (n,)
        return
    for first in range(1, n - k + 2):
        for rest in _compositions(n - first, k - 1):
            yield (first,) + rest


class Element:
    """Finite rational combination of tree monomials of one arity."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        acc = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for t, c in items:
                c = rat(c)
                if c:
                    acc[t] = acc.get(t, 0) + c
        self.terms = {t: c for t, c in acc.items() if c}
        if len({t.arity for t in self.terms}) > 1:
            raise ValueError("mixed arities in an operad element")

    @classmethod
    def monomial(cls, tree, coeff=1):
        return cls({tree: coeff})

    @property
    def arity(self):
        for t in self.terms:
            return t.arity
        return None

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def items(self):
        return self.terms.items()

    def coeff(self, tree):
        return self.terms.get(tree, Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        out = dict(self.terms)
        for t, c in other.terms.items():
            out[t] = out.get(t, 0) + c
        return Element(out)

    def __neg__(self):
        return Element({t: -c for t, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        c = rat(c)
        return Element({t: c * v for t, v in self.terms.items()})

    def sorted_terms(self):
        """Terms from largest to smallest monomial."""
        return sorted(self.terms.items(), key=lambda tc: tc[0].order_key, reverse=True)

    def leading(self):
        return self.sorted_terms()[0] if self.terms else None

    def __repr__(self):
        return f"Element({render_element(self)})"

    def __str__(self):
        return render_element(self)


def graft_element(outer, slot, inner):
    """Bilinear extension of :func:`graft`."""
    out = {}
    for a, ca in outer.items():
        for b, cb in inner.items():
            t = graft(a, slot, b)
            out[t] = out.get(t, 0) + ca * cb
    return Element(out)


# -- text rendering ---------------------------------------------------------

def render(tree):
    """Nested infix text, leaves ``x1 .. xn`` left to right."""
    counter = iter(range(1, tree.arity + 1))

    def go(t, top):
        if t.is_leaf:
            return f"x{next(counter)}"
        parts = [go(c, False) for c in t.children]
        if t.label.arity == 2:
            s = f"{parts[0]}{t.label.name}{parts[1]}"
            return s if top else f"({s})"
        return f"{t.label.name}({','.join(parts)})"

    return go(tree, True)


def render_element(e):
    if not e:
        return "0"
    out = []
    for t, c in e.sorted_terms():
        sign = "-" if c < 0 else "+"
        c = abs(c)
        coef = "" if c == 1 else f"{c} "
        out.append(f"{sign} {coef}{render(t)}")
    s = " ".join(out)
    return s[2:] if s.startswith("+ ") else s


_TOKEN = re.compile(r"\s*(x\d+|\(|\)|,|[A-Za-z_][A-Za-z_0-9]*|[^\sA-Za-z0-9_(),])")


class ParseError(ValueError):
    pass


def parse_tree(text, generators):
    """Inverse of :func:`render` for the given generator set."""
    by_name = {g.name: g for g in generators}
    toks = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        toks.append(m.group(1))
        pos = m.end()
    leaves = []
    i = 0

    def peek():
        return toks[i] if i < len(toks) else None

    def take(expected=None):
        nonlocal i
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise ParseError(f"expected {expected or 'token'} in {text!r}, got {tok!r}")
        i += 1
        return tok

    def operand():
        tok = peek()
        if tok == "(":
            take("(")
            t = expr()
            take(")")
            return t
        if tok is not None and re.fullmatch(r"x\d+", tok):
            take()
            leaves.append(int(tok[1:]))
            return LEAF
        if tok in by_name and by_name[tok].arity != 2:
            g = by_name[take()]
            take("(")
            kids = [expr()]
            while peek() == ",":
                take(",")
                kids.append(expr())
            take(")")
            return Tree(g, kids)
        raise ParseError(f"unexpected token {tok!r} in {text!r}")

    def expr():
        left = operand()
        tok = peek()
        if tok in by_name and by_name[tok].arity == 2:
            g = by_name[take()]
            right = operand()
            return Tree(g, [left, right])
        return left

    tree = expr()
    if i != len(toks):
        raise ParseError(f"trailing input in {text!r}")
    if leaves != list(range(1, len(leaves) + 1)):
        raise ParseError(f"leaves must read x1..xn left to right in {text!r}")
    return tree


_TERM = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*")


def parse_element(text, generators):
    """Parse ``c1 t1 + c2 t2 - ...``; coefficients are optional rationals."""
    text = text.strip()
    if text == "0":
        return Element()
    chunks = []
    depth, start = 0, 0
    for k, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and k > start and text[start:k].strip():
            chunks.append(text[start:k])
            start = k
    chunks.append(text[start:])
    terms = []
    for chunk in chunks:
        m = _TERM.match(chunk)
        sign, coef = m.group(1), m.group(2)
        body = chunk[m.end():]
        c = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            c = -c
        terms.append((parse_tree(body, generators), c))
    return Element(terms)


def decode(seq, generators):
    """Inverse of ``Tree.encoding``."""
    by_name = {g.name: g for g in generators}
    it = iter(seq)

    def go():
        tok = next(it)
        if tok == "|":
            return LEAF
        g = by_name[tok]
        return Tree(g, [go() for _ in range(g.arity)])

    t = go()
    if next(it, None) is not None:
        raise ValueError("trailing tokens in encoding")
    return t
