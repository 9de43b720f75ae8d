"""The operad ²As in closed form and the cobar differential of As²∞.

A basis element μ_ij of ²As has i copies of ``*`` and j copies of ``•``
and arity i + j + 1.  Composition just adds the counts.  The generators
m_ij of As²∞ (i + j >= 1) have degree i + j - 1.
"""

from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True, order=True)
class TwoAsBasis:
    i: int
    j: int

    def __post_init__(self):
        if self.i < 0 or self.j < 0:
            raise ValueError("indices must be non-negative")

    @property
    def arity(self):
        return self.i + self.j + 1

    @property
    def is_identity(self):
        return self.i == 0 and self.j == 0


IDENTITY = TwoAsBasis(0, 0)


def gamma(outer, inners):
    inners = list(inners)
    if len(inners) != outer.arity:
        raise ValueError(f"μ_{outer.i}{outer.j} takes {outer.arity} inputs, got {len(inners)}")
    return TwoAsBasis(outer.i + sum(x.i for x in inners), outer.j + sum(x.j for x in inners))


def partial_compose(outer, p, inner):
    if not 0 <= p < outer.arity:
        raise IndexError(f"slot {p} out of range for arity {outer.arity}")
    return TwoAsBasis(outer.i + inner.i, outer.j + inner.j)


def delta1(c, d):
    """Reduced infinitesimal decomposition of the dual basis element (c, d)^c.

    Returns (outer, p, inner) triples, each with coefficient +1.
    """
    if c + d < 1:
        raise ValueError("delta1 is defined on the reduced part (c + d >= 1)")
    out = []
    for i in range(c + 1):
        for j in range(d + 1):
            outer, inner = TwoAsBasis(i, j), TwoAsBasis(c - i, d - j)
            if outer.is_identity or inner.is_identity:
                continue
            for p in range(outer.arity):
                out.append((outer, p, inner))
    return out


@dataclass(frozen=True)
class CobarGenerator:
    i: int
    j: int

    def __post_init__(self):
        if self.i < 0 or self.j < 0 or self.i + self.j < 1:
            raise ValueError("m_ij needs i, j >= 0 and i + j >= 1")

    @property
    def arity(self):
        return self.i + self.j + 1

    @property
    def degree(self):
        return self.i + self.j - 1

    def __str__(self):
        return f"m[{self.i},{self.j}]"


@dataclass(frozen=True)
class DTerm:
    coeff: int
    outer: CobarGenerator
    p: int
    inner: CobarGenerator

    @property
    def q(self):
        return self.inner.arity

    @property
    def r(self):
        return self.outer.arity - 1 - self.p

    def render(self):
        args = ["1"] * self.outer.arity
        args[self.p] = str(self.inner)
        sign = "+" if self.coeff > 0 else "-"
        return f"{sign} {self.outer}({','.join(args)})"


class DifferentialExpression:
    def __init__(self, source, terms):
        self.source = source
        self.terms = list(terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def signs(self):
        return [t.coeff for t in self.terms]

    def render(self):
        body = " ".join(t.render() for t in self.terms) if self.terms else "0"
        return f"d {self.source} = {body}"

    __str__ = render


def standard_sign(p, q, r):
    return -1 if (p + q * r) % 2 else 1


def cobar_differential(i, j, sign=standard_sign):
    """∂(m_ij) as a signed sum of two-vertex compositions."""
    g = CobarGenerator(i, j)
    terms = []
    for a in range(i, -1, -1):
        for b in range(j + 1):
            c, d = i - a, j - b
            if a + b < 1 or c + d < 1:
                continue
            outer, inner = CobarGenerator(a, b), CobarGenerator(c, d)
            q = inner.arity
            for p in range(outer.arity):
                r = outer.arity - 1 - p
                terms.append(DTerm(sign(p, q, r), outer, p, inner))
    return DifferentialExpression(g, terms)


# -- ∂ extended as a derivation ---------------------------------------------
#
# A tree monomial in the free graded operad is stored with its vertices in
# preorder: node = (label, children), leaf = None, label = (i, j).  Its
# coefficient refers to that vertex order; reordering the tensor factors of
# the vertices costs the usual Koszul sign.

def _deg(label):
    return label[0] + label[1] - 1


def _arity(label):
    return label[0] + label[1] + 1


def _koszul_sort_sign(tags_degrees):
    """Koszul sign relating the tag order of the vertices to their preorder.

    Input: (tag, degree) per vertex in preorder; the tags record the tensor
    order the coefficient currently refers to.
    """
    sign = 1
    n = len(tags_degrees)
    for a in range(n):
        for b in range(a + 1, n):
            ta, da = tags_degrees[a]
            tb, db = tags_degrees[b]
            if ta > tb and da % 2 and db % 2:
                sign = -sign
    return sign


def _strip(tree):
    if tree is None:
        return None
    return (tree[0], tuple(_strip(k) for k in tree[2]))


def _tag(tree, counter):
    if tree is None:
        return None
    tag = counter[0]
    counter[0] += 1
    return (tree[0], tag, tuple(_tag(k, counter) for k in tree[1]))


def _tagged_preorder(tree):
    if tree is None:
        return []
    out = [(tree[1], _deg(tree[0]))]
    for k in tree[2]:
        out.extend(_tagged_preorder(k))
    return out


@lru_cache(maxsize=None)
def _dterms(label, sign):
    return tuple(cobar_differential(label[0], label[1], sign).terms)


def derivation(tree, sign=standard_sign):
    """∂ applied to one canonical tree monomial: dict tree -> int coefficient."""
    counter = [0]
    tagged = _tag(tree, counter)
    verts = _tagged_preorder(tagged)
    out = {}
    prefix = 0
    for pos, (tag, deg) in enumerate(verts):
        pre_sign = -1 if prefix % 2 else 1
        for term in _dterms(_vertex_label(tagged, tag), sign):
            new = _expand_vertex(tagged, tag, term)
            ksign = _koszul_sort_sign(_tagged_preorder(new))
            key = _strip(new)
            out[key] = out.get(key, 0) + pre_sign * term.coeff * ksign
        prefix += deg
    return {k: v for k, v in out.items() if v}


def _vertex_label(tagged, tag):
    if tagged is None:
        return None
    if tagged[1] == tag:
        return tagged[0]
    for k in tagged[2]:
        found = _vertex_label(k, tag)
        if found is not None:
            return found
    return None


def _expand_vertex(tagged, tag, term):
    """Replace vertex ``tag`` by outer∘_p inner; outer keeps the tag, inner gets tag + 0.5."""
    if tagged is None:
        return None
    label, t, kids = tagged
    if t != tag:
        return (label, t, tuple(_expand_vertex(k, tag, term) for k in kids))
    outer = (term.outer.i, term.outer.j)
    inner = (term.inner.i, term.inner.j)
    p, q = term.p, term.inner.arity
    inner_node = (inner, tag + 0.5, tuple(kids[p : p + q]))
    outer_kids = tuple(kids[:p]) + (inner_node,) + tuple(kids[p + q :])
    return (outer, tag, outer_kids)


def d_squared(i, j, sign=standard_sign):
    """∂∂(m_ij) as a dict of canonical three-vertex trees."""
    total = {}
    for term in cobar_differential(i, j, sign):
        outer = (term.outer.i, term.outer.j)
        inner = (term.inner.i, term.inner.j)
        kids = [None] * _arity(outer)
        kids[term.p] = (inner, tuple([None] * _arity(inner)))
        tree = (outer, tuple(kids))
        for t, c in derivation(tree, sign).items():
            total[t] = total.get(t, 0) + term.coeff * c
    return {k: v for k, v in total.items() if v}


def render_cobar_tree(tree):
    if tree is None:
        return "1"
    label, kids = tree
    return f"m[{label[0]},{label[1]}]({','.join(render_cobar_tree(k) for k in kids)})"


@dataclass
class CheckResult:
    ok: bool
    witness: object = None
    checked: int = 0
    nontrivial: int = 0

    def __bool__(self):
        return self.ok


def d_squared_check(n_max, sign=standard_sign):
    """Verify ∂∂(m_ij) = 0 for every generator of arity <= n_max."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    checked = 0
    for n in range(2, n_max + 1):
        for i in range(n):
            j = n - 1 - i
            res = d_squared(i, j, sign)
            checked += 1
            if res:
                tree, coeff = min(res.items(), key=lambda kv: render_cobar_tree(kv[0]))
                witness = {"generator": f"m[{i},{j}]", "arity": n,
                           "term": render_cobar_tree(tree), "coefficient": coeff}
                return CheckResult(False, witness, checked)
    return CheckResult(True, None, checked)


def ainfty_table(n):
    """Classical A∞ differential of m_n: {(k, p, q): sign} with k = p + 1 + r."""
    out = {}
    for q in range(2, n):
        for p in range(0, n - q + 1):
            r = n - p - q
            k = p + 1 + r
            if k < 2:
                continue
            out[(k, p, q)] = -1 if (p + q * r) % 2 else 1
    return out


def ainfty_slice_check(n_max):
    """The j = 0 part of ∂ against the A∞ table under m_{i0} <-> m_{i+1}."""
    if n_max < 2:
        raise ValueError("n_max must be at least 2")
    for n in range(2, n_max + 1):
        expr = cobar_differential(n - 1, 0)
        ours = {}
        for t in expr:
            if t.outer.j or t.inner.j:
                return CheckResult(False, {"arity": n, "term": t.render()})
            ours[(t.outer.i + 1, t.p, t.inner.i + 1)] = t.coeff
        if ours != ainfty_table(n):
            return CheckResult(False, {"arity": n, "ours": ours, "classical": ainfty_table(n)})
    return CheckResult(True)


def mirror(expr):
    """Swap the roles of * and • in a differential expression."""
    def flip(g):
        return CobarGenerator(g.j, g.i)

    return [DTerm(t.coeff, flip(t.outer), t.p, flip(t.inner)) for t in expr]
