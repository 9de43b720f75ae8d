"""Binary quadratic presentations and Koszul duality in weight 2."""

from dataclasses import dataclass
from fractions import Fraction

from .free_operad import (
    Element,
    Generator,
    ParseError,
    Tree,
    corolla,
    graft,
    parse_element,
    render_element,
)
from .ratlinalg import RatMatrix, nullspace_basis, rank_of, span_equal

STAR = Generator("*", arity=2, degree=0, rank=2)
BULLET = Generator("•", arity=2, degree=0, rank=1)
MU = Generator("·", arity=2, degree=0, rank=1)

PRESETS = ("as", "two_as", "as_2")


def composite(outer, shape, inner):
    """``outer ∘_shape inner`` with shape 1 = ((.,.),.) and 2 = (.,(.,.))."""
    if shape not in (1, 2):
        raise ValueError("shape must be 1 or 2")
    return graft(corolla(outer), shape - 1, corolla(inner))


@dataclass(frozen=True)
class QuadraticPresentation:
    generators: tuple
    relators: tuple
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(self.relators))
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("duplicate generator names")
        if len({g.rank for g in self.generators}) != len(self.generators):
            raise ValueError("generator ranks must be distinct")
        for g in self.generators:
            if g.arity != 2 or g.degree != 0:
                raise ValueError(f"generator {g.name} must be binary of degree 0")
        basis = set(self.weight2_basis())
        vecs = []
        for r in self.relators:
            if not r or not set(r) <= basis:
                raise ValueError(f"relator {r} is not a weight-2 combination")
            vecs.append(self.coordinates(r))
        if rank_of(vecs, len(basis)) != len(vecs):
            raise ValueError("relators are linearly dependent")

    def weight2_basis(self):
        """Monomials indexed by (shape, outer, inner), shape-major."""
        gens = self.generators
        return [composite(a, s, b) for s in (1, 2) for a in gens for b in gens]

    def coordinates(self, element):
        index = {t: k for k, t in enumerate(self.weight2_basis())}
        v = [Fraction(0)] * len(index)
        for t, c in element.items():
            v[index[t]] += c
        return tuple(v)

    def element(self, coords):
        return Element(zip(self.weight2_basis(), coords))

    def relator_vectors(self):
        return [self.coordinates(r) for r in self.relators]

    def same_relations(self, other):
        if [g.name for g in self.generators] != [g.name for g in other.generators]:
            return False
        ours = self.relator_vectors()
        theirs = [self.coordinates(_rename(r, self.generators)) for r in other.relators]
        return span_equal(ours, theirs)


def _rename(element, generators):
    by_name = {g.name: g for g in generators}

    def go(t):
        if t.is_leaf:
            return t
        return Tree(by_name[t.label.name], [go(c) for c in t.children])

    return Element({go(t): c for t, c in element.items()})


def _assoc(g):
    return Element.monomial(composite(g, 1, g)) - Element.monomial(composite(g, 2, g))


def preset(name):
    if name == "as":
        return QuadraticPresentation((MU,), (_assoc(MU),), "as")
    if name == "two_as":
        s, b = STAR, BULLET
        rels = [
            Element.monomial(composite(x, 1, y)) - Element.monomial(composite(x, 2, y))
            for x, y in ((s, s), (s, b), (b, s), (b, b))
        ]
        rels.append(Element.monomial(composite(s, 2, b)) - Element.monomial(composite(b, 2, s)))
        return QuadraticPresentation((s, b), rels, "two_as")
    if name == "as_2":
        s, b = STAR, BULLET
        compat = Element(
            {
                composite(s, 1, b): 1,
                composite(b, 1, s): 1,
                composite(b, 2, s): -1,
                composite(s, 2, b): -1,
            }
        )
        return QuadraticPresentation((s, b), (_assoc(s), _assoc(b), compat), "as_2")
    raise KeyError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}")


def pairing_signs(p):
    """Diagonal of the weight-2 pairing: +1 on ((.,.),.) monomials, -1 on (.,(.,.))."""
    k = len(p.generators)
    return [1] * (k * k) + [-1] * (k * k)


def weight2_pairing(u, v, p):
    """Scalar product of two coordinate vectors in the weight-2 space of ``p``."""
    signs = pairing_signs(p)
    if len(u) != len(signs) or len(v) != len(signs):
        raise ValueError("vectors do not live in this weight-2 space")
    return sum((Fraction(s) * a * b for s, a, b in zip(signs, u, v)), Fraction(0))


def koszul_dual(p):
    """Presentation on the same symbols whose relators span R^perp."""
    signs = pairing_signs(p)
    rows = [[s * x for s, x in zip(signs, r)] for r in p.relator_vectors()]
    n = len(signs)
    m = RatMatrix(rows, n) if rows else RatMatrix.zeros(0, n)
    basis = nullspace_basis(m)
    # scale to integer, primitive, positive-leading vectors for readable output
    rels = tuple(p.element(_primitive(v)) for v in basis)
    name = f"{p.name}!" if p.name else ""
    return QuadraticPresentation(p.generators, rels, name)


def _primitive(v):
    from math import gcd

    den = 1
    for x in v:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints] if g else ints
    lead = next((x for x in ints if x), 1)
    return [Fraction(-x if lead < 0 else x) for x in ints]


def associator_pencil(p):
    """λ², λμ, μ² coefficients of the associator of λ·g1 + μ·g2."""
    if len(p.generators) != 2:
        raise ValueError("the pencil needs exactly two generators")
    g1, g2 = p.generators
    out = []
    for pair_set in (((g1, g1),), ((g1, g2), (g2, g1)), ((g2, g2),)):
        acc = Element()
        for a, b in pair_set:
            acc = acc + Element.monomial(composite(a, 1, b)) - Element.monomial(composite(a, 2, b))
        out.append(acc)
    return out


def blended_associator(p, lam, mu):
    """Associator of λ·g1 + μ·g2 as a weight-2 element."""
    g1, g2 = p.generators
    coef = {g1: Fraction(lam), g2: Fraction(mu)}
    acc = Element()
    for a in (g1, g2):
        for b in (g1, g2):
            c = coef[a] * coef[b]
            acc = acc + c * (Element.monomial(composite(a, 1, b)) - Element.monomial(composite(a, 2, b)))
    return acc


def pencil_associativity_check(p):
    pencil = [p.coordinates(e) for e in associator_pencil(p)]
    return span_equal(p.relator_vectors(), pencil)


# -- text format --------------------------------------------------------------
#
#   # comment
#   name two_as
#   generator * 2
#   generator • 1
#   relator (x1*x2)*x3 - x1*(x2*x3)
#
# generator lines carry the symbol and its rank; ranks order the generators.

def dumps(p):
    lines = []
    if p.name:
        lines.append(f"name {p.name}")
    for g in p.generators:
        lines.append(f"generator {g.name} {g.rank}")
    for r in p.relators:
        lines.append(f"relator {render_element(r)}")
    return "\n".join(lines) + "\n"


def loads(text):
    gens, rel_lines, name = [], [], ""
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "name":
            name = rest
        elif key == "generator":
            parts = rest.split()
            if len(parts) != 2:
                raise ParseError(f"line {lineno}: expected 'generator <symbol> <rank>'")
            try:
                rank = int(parts[1])
            except ValueError:
                raise ParseError(f"line {lineno}: rank must be an integer") from None
            gens.append(Generator(parts[0], 2, 0, rank))
        elif key == "relator":
            rel_lines.append((lineno, rest))
        else:
            raise ParseError(f"line {lineno}: unknown field {key!r}")
    if not gens:
        raise ParseError("no generators declared")
    rels = []
    for lineno, body in rel_lines:
        try:
            rels.append(parse_element(body, gens))
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    return QuadraticPresentation(tuple(gens), tuple(rels), name)
