"""Rewriting systems for quadratic ns operads.

Relators are oriented by the path-lexicographic monomial order, so every
rule replaces its leading monomial by a combination of strictly smaller
ones.  Confluence of the critical monomials certifies Koszulness.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
import random as _random

from .free_operad import Element, Tree, match, monomials, render, render_element, substitute
from .ratlinalg import RatMatrix, rref

STEP_BUDGET = 10**6


class RewriteBudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class RewriteRule:
    lhs: Tree
    rhs: Element

    def __post_init__(self):
        for t in self.rhs:
            if t.order_key >= self.lhs.order_key:
                raise ValueError(f"rhs term {render(t)} is not below {render(self.lhs)}")

    def __str__(self):
        return f"{render(self.lhs)} -> {render_element(self.rhs)}"


@dataclass
class RewriteSystem:
    presentation: object
    rules: list
    _nf_cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        lhs = [r.lhs for r in self.rules]
        if len(set(lhs)) != len(lhs):
            raise ValueError("two rules share a leading term")

    @property
    def generators(self):
        return self.presentation.generators

    def rule_for(self, tree):
        """First rule whose lhs matches at the root of ``tree``, with the captured arguments."""
        for rule in self.rules:
            args = match(rule.lhs, tree)
            if args is not None:
                return rule, args
        return None


def orient(p, key=None):
    """Turn the relators of ``p`` into reduced rewrite rules.

    ``key`` maps a monomial to a sortable key; defaults to the path-lex order.
    """
    key = key or (lambda t: t.order_key)
    basis = sorted(p.weight2_basis(), key=key, reverse=True)
    cols = {t: k for k, t in enumerate(basis)}
    rows = []
    for r in p.relators:
        row = [Fraction(0)] * len(basis)
        for t, c in r.items():
            row[cols[t]] += c
        rows.append(row)
    red, pivots = rref(RatMatrix(rows, len(basis)))
    if len(pivots) != len(p.relators):
        raise ValueError("a leading term cancelled during inter-reduction")
    rules = []
    for r, pc in enumerate(pivots):
        row = red.row(r)
        rhs = Element({basis[c]: -row[c] for c in range(pc + 1, len(basis)) if row[c]})
        rules.append(RewriteRule(basis[pc], rhs))
    return RewriteSystem(p, rules)


def redexes(tree, rs):
    """(path, rule, args) for every rule application, leftmost-innermost first."""
    out = []

    def go(path, t):
        if t.is_leaf:
            return
        for k, c in enumerate(t.children):
            go(path + (k,), c)
        for rule in rs.rules:
            args = match(rule.lhs, t)
            if args is not None:
                out.append((path, rule, args))

    go((), tree)
    return out


def apply_at(tree, path, rule, args):
    """Rewrite the redex of ``rule`` at ``path``; returns an Element."""
    return Element({tree.replace(path, substitute(t, args)): c for t, c in rule.rhs.items()})


def rewrite_monomial(tree, rs, rng=None):
    found = redexes(tree, rs)
    if not found:
        return None
    path, rule, args = rng.choice(found) if rng is not None else found[0]
    return apply_at(tree, path, rule, args)


def is_normal(tree, rs):
    return not redexes(tree, rs)


class _Counter:
    def __init__(self, budget):
        self.steps = 0
        self.budget = budget

    def tick(self):
        self.steps += 1
        if self.steps > self.budget:
            raise RewriteBudgetExceeded(f"more than {self.budget} rewrite steps")


def normalize(e, rs, rng=None, budget=STEP_BUDGET, stats=None):
    """Normal form of an element (or monomial).

    With ``rng`` the redex and the term to rewrite are picked at random;
    otherwise the leftmost-innermost redex is used and results are cached.
    """
    if isinstance(e, Tree):
        e = Element.monomial(e)
    counter = _Counter(budget)
    if rng is None:
        out = Element()
        for t, c in e.items():
            out = out + c * _nf_monomial(t, rs, counter)
    else:
        out = _normalize_random(e, rs, rng, counter)
    if stats is not None:
        stats["steps"] = counter.steps
    return out


def _nf_monomial(tree, rs, counter):
    cache = rs._nf_cache
    if tree in cache:
        return cache[tree]
    step = rewrite_monomial(tree, rs)
    if step is None:
        res = Element.monomial(tree)
    else:
        counter.tick()
        res = Element()
        for t, c in step.items():
            res = res + c * _nf_monomial(t, rs, counter)
    cache[tree] = res
    return res


def _normalize_random(e, rs, rng, counter):
    terms = dict(e.items())
    while True:
        reducible = [t for t in terms if not is_normal(t, rs)]
        if not reducible:
            return Element(terms)
        reducible.sort(key=lambda t: t.order_key)
        t = rng.choice(reducible)
        c = terms.pop(t)
        counter.tick()
        for s, d in rewrite_monomial(t, rs, rng).items():
            terms[s] = terms.get(s, 0) + c * d
            if not terms[s]:
                del terms[s]


def reduction_trace(e, rs, budget=STEP_BUDGET):
    """Elements visited by deterministic one-step rewriting until normal form."""
    trace = [e]
    counter = _Counter(budget)
    while True:
        step = _one_step(trace[-1], rs)
        if step is None:
            return trace
        counter.tick()
        trace.append(step)


def _one_step(e, rs):
    for t, c in e.sorted_terms():
        res = rewrite_monomial(t, rs)
        if res is not None:
            return e - Element.monomial(t, c) + c * res
    return None


# -- critical monomials -------------------------------------------------------

def _occurrences(tree, rs):
    """Covered vertex sets of every lhs occurrence, with the rule and root path."""
    out = []
    for path, sub in tree.vertices():
        for rule in rs.rules:
            if match(rule.lhs, sub) is not None:
                covered = frozenset(path + p for p, _ in rule.lhs.vertices())
                out.append((covered, path, rule))
    return out


def overlap_kind(a, b):
    """'chain' when the shared vertex is the root of exactly one occurrence, else 'sibling'."""
    (ca, pa, _), (cb, pb, _) = a, b
    shared = ca & cb
    if pa == pb:
        return "sibling"
    if pa in shared or pb in shared:
        return "chain"
    return "sibling"


def critical_monomials(rs, kinds=("chain",)):
    """Weight-3 monomials covered by two overlapping leading terms.

    ``kinds`` selects which overlaps count: ``"chain"`` (one leading term
    sits on top of the other, sharing the middle vertex) and/or
    ``"sibling"`` (two leading terms hanging off the same root vertex).
    """
    for r in rs.rules:
        if r.lhs.weight != 2 or any(g.arity != 2 for g in rs.generators):
            raise ValueError("critical monomials are computed for binary quadratic rules")
    found = []
    for t in monomials(rs.generators, 4):
        occ = _occurrences(t, rs)
        for a, b in combinations(occ, 2):
            if a[0] != b[0] and a[0] & b[0] and overlap_kind(a, b) in kinds:
                found.append(t)
                break
    return found


def brute_force_critical(rs):
    """Every weight-3 monomial with two distinct intersecting lhs occurrences."""
    out = []
    for t in monomials(rs.generators, 4):
        covers = {c for c, _, _ in _occurrences(t, rs)}
        if any(a & b for a, b in combinations(covers, 2)):
            out.append(t)
    return out


@dataclass
class CriticalReport:
    monomial: Tree
    kind: str
    branches: list  # one reduction trace (list of Elements) per first rewrite
    normal_forms: list
    ok: bool


@dataclass
class ConfluenceReport:
    entries: list
    passed: bool

    def failures(self):
        return [e for e in self.entries if not e.ok]

    def render(self):
        lines = []
        for k, e in enumerate(self.entries, 1):
            status = "confluent" if e.ok else "NOT confluent"
            lines.append(f"[{k}] {render(e.monomial)}  ({e.kind} overlap): {status}")
            for b, branch in enumerate(e.branches, 1):
                chain = "  ->  ".join(render_element(x) for x in branch)
                lines.append(f"    branch {b}: {render(e.monomial)}  ->  {chain}")
        verdict = "PASS" if self.passed else "FAIL"
        lines.append(f"{verdict}: {sum(e.ok for e in self.entries)}/{len(self.entries)} critical monomials confluent")
        return "\n".join(lines)


def confluence_report(rs, kinds=("chain",)):
    entries = []
    for t in critical_monomials(rs, kinds):
        occ = _occurrences(t, rs)
        kind = "chain"
        for a, b in combinations(occ, 2):
            if a[0] != b[0] and a[0] & b[0]:
                kind = overlap_kind(a, b)
                if kind in kinds:
                    break
        branches, nfs = [], []
        for _, path, rule in occ:
            first = apply_at(t, path, rule, match(rule.lhs, t.subtree(path)))
            trace = reduction_trace(first, rs)
            branches.append(trace)
            nfs.append(trace[-1])
        ok = all(nf == nfs[0] for nf in nfs)
        entries.append(CriticalReport(t, kind, branches, nfs, ok))
    return ConfluenceReport(entries, all(e.ok for e in entries))


# -- normal forms and Poincaré series ----------------------------------------

def normal_monomials(rs, n):
    """Monomials of arity n with no lhs pattern, built from normal subtrees."""
    gens = sorted(rs.generators, key=lambda g: (-g.rank, g.name))
    cache = {1: [Tree()]}

    def go(m):
        if m in cache:
            return cache[m]
        res = []
        for g in gens:
            for left in range(1, m):
                for a in go(left):
                    for b in go(m - left):
                        t = Tree(g, (a, b))
                        if rs.rule_for(t) is None:
                            res.append(t)
        cache[m] = res
        return res

    if any(g.arity != 2 for g in gens):
        return [t for t in monomials(gens, n) if is_normal(t, rs)]
    return go(n)


def count_normal_forms(rs, n):
    return len(normal_monomials(rs, n))


def _series(dims, n_max):
    """Σ (-1)^n dim(n) t^n as a coefficient list indexed by power."""
    c = [Fraction(0)] * (n_max + 1)
    for n, d in enumerate(dims[:n_max], 1):
        c[n] = Fraction((-1) ** n * d)
    return c


def _mul(a, b, n_max):
    out = [Fraction(0)] * (n_max + 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b[: n_max + 1 - i]):
            out[i + j] += x * y
    return out


def compose_series(f, g, n_max):
    """f(g(t)) truncated at t^n_max; g has no constant term."""
    out = [Fraction(0)] * (n_max + 1)
    power = [Fraction(1)] + [Fraction(0)] * n_max
    for k in range(1, n_max + 1):
        power = _mul(power, g, n_max)
        if f[k]:
            out = [o + f[k] * p for o, p in zip(out, power)]
    return out


def poincare_consistency(dims_p, dims_dual, n_max):
    if len(dims_p) < n_max or len(dims_dual) < n_max:
        raise ValueError(f"need dimensions for arities 1..{n_max}")
    fp = _series(list(dims_p), n_max)
    fd = _series(list(dims_dual), n_max)
    comp = compose_series(fd, fp, n_max)
    target = [Fraction(0)] * (n_max + 1)
    target[1] = Fraction(1)
    return comp == target


def random_strategy(seed):
    return _random.Random(seed)
