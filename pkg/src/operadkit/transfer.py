"""Homotopy transfer of dg As²-algebra structures onto deformation retracts.

Conventions: differentials have degree -1, the homotopy h has degree +1
and ``id - i p = d h + h d``.  Vectors are sparse dicts index -> Fraction
over a flat basis ordered by degree.

The transferred operation m_ij is ``p ∘ λ_ij ∘ i^{⊗n}``, where λ_ij sums
over planar binary trees with i vertices labeled ``*`` and j labeled
``•``: at a vertex with left subtree of arity k and right subtree of
arity l, the two subtree outputs (each passed through h unless it is a
leaf) are multiplied and the vertex contributes the sign ``(-1)^(k+1)``.
Passing the right branch past the first k inputs costs the Koszul sign
``(-1)^((l-1)(|x_1|+...+|x_k|))``.  With these signs the result satisfies
the As²∞ relations ``∂(m_ij) = Σ ± m_ab(1..m_cd..1)`` exactly as produced
by :func:`operadkit.cobar.cobar_differential`.  The familiar A∞ choice
``(-1)^(k(l+1))`` agrees on retracts with d_V = 0 up to arity 4 but
breaks once d_V != 0.  ``scripts/sign_search.py`` scans the family
``(-1)^(a kl + b k + c l + e)``: partial retracts with d_V != 0 leave two
members, and the balanced12 test fixture, where the balanced arity 4 tree
has to cancel against combs at arity 5, rules out the other one.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
import random as _random

from .cobar import cobar_differential, CheckResult
from .ratlinalg import RatMatrix, inverse, nullspace_basis, rank_of, rat, solve


_UNIT_P = 0.5


class ContractError(ValueError):
    """Input is well-formed but violates a mathematical contract."""


# -- sparse vectors ---------------------------------------------------------

def vadd(acc, vec, c=1):
    for k, v in vec.items():
        s = acc.get(k, 0) + c * v
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)
    return acc


def vscale(vec, c):
    return {k: c * v for k, v in vec.items()} if c else {}


def _columns(m):
    """Sparse columns of a RatMatrix."""
    return [{r: m[r, c] for r in range(m.rows) if m[r, c]} for c in range(m.cols)]


def apply_cols(cols, vec):
    out = {}
    for k, v in vec.items():
        vadd(out, cols[k], v)
    return out


# -- chain complexes ------------------------------------------------------------

class ChainComplex:
    """Finite-dimensional graded vector space with a degree -1 differential."""

    def __init__(self, degrees, d=None):
        self.degrees = {int(k): list(v) for k, v in sorted(degrees.items(), key=lambda kv: int(kv[0]))}
        self.basis = [name for deg in self.degrees for name in self.degrees[deg]]
        self.degree = [deg for deg in self.degrees for _ in self.degrees[deg]]
        if len(set(self.basis)) != len(self.basis):
            raise ContractError("basis names must be distinct")
        self.index = {name: k for k, name in enumerate(self.basis)}
        n = len(self.basis)
        if d is None:
            d = RatMatrix.zeros(n, n)
        elif not isinstance(d, RatMatrix):
            rows = [[Fraction(0)] * n for _ in range(n)]
            for src, tgt, c in d:
                if src not in self.index or tgt not in self.index:
                    raise ContractError(f"differential entry mentions unknown basis element {src!r} or {tgt!r}")
                rows[self.index[tgt]][self.index[src]] += rat(c)
            d = RatMatrix(rows, n)
        if d.shape != (n, n):
            raise ContractError("differential has the wrong shape")
        self.d = d
        for r in range(n):
            for c in range(n):
                if d[r, c] and self.degree[r] != self.degree[c] - 1:
                    raise ContractError(f"d({self.basis[c]}) has a component on {self.basis[r]} of the wrong degree")
        if n and not (d @ d).is_zero():
            raise ContractError("d∘d != 0")
        self.d_cols = _columns(d)

    @property
    def dim(self):
        return len(self.basis)

    def indices_in_degree(self, deg):
        return [k for k, g in enumerate(self.degree) if g == deg]

    def vec_degree(self, vec):
        degs = {self.degree[k] for k in vec}
        if len(degs) > 1:
            raise ValueError("inhomogeneous vector")
        return degs.pop() if degs else None

    def dmap(self, vec):
        return apply_cols(self.d_cols, vec)

    def entries(self):
        out = []
        for c in range(self.dim):
            for r in range(self.dim):
                if self.d[r, c]:
                    out.append((self.basis[c], self.basis[r], self.d[r, c]))
        return out


# -- algebras -------------------------------------------------------------------

class Bilinear:
    """Degree-0 bilinear map on a complex, stored as (x, y) -> sparse vector."""

    def __init__(self, complex_, table=None):
        self.complex = complex_
        self.table = {}
        for (x, y), vec in (table or {}).items():
            vec = {k: rat(v) for k, v in vec.items() if rat(v)}
            if vec:
                self.table[(x, y)] = vec
        deg = complex_.degree
        for (x, y), vec in self.table.items():
            for z in vec:
                if deg[z] != deg[x] + deg[y]:
                    raise ContractError(
                        f"product of {complex_.basis[x]} and {complex_.basis[y]} hits "
                        f"{complex_.basis[z]} in the wrong degree"
                    )

    def __call__(self, u, w):
        out = {}
        for x, a in u.items():
            for y, b in w.items():
                vec = self.table.get((x, y))
                if vec:
                    vadd(out, vec, a * b)
        return out

    def basis_product(self, x, y):
        return self.table.get((x, y), {})

    def scaled_sum(self, other, lam, mu):
        table = {}
        for key in set(self.table) | set(other.table):
            acc = vadd({}, self.table.get(key, {}), lam)
            vadd(acc, other.table.get(key, {}), mu)
            if acc:
                table[key] = acc
        return Bilinear(self.complex, table)

    def __eq__(self, other):
        return isinstance(other, Bilinear) and self.table == other.table


@dataclass
class DgAs2Algebra:
    complex: ChainComplex
    star: Bilinear
    bullet: Bilinear

    def swapped(self):
        return DgAs2Algebra(self.complex, self.bullet, self.star)


def check_dg_as2(alg):
    """Leibniz for both products, both associativities and the 4-term compatibility."""
    A = alg.complex
    n = A.dim
    star, bullet = alg.star, alg.bullet
    e = [{k: Fraction(1)} for k in range(n)]
    for name, m in (("*", star), ("•", bullet)):
        for x in range(n):
            for y in range(n):
                lhs = A.dmap(m(e[x], e[y]))
                rhs = m(A.dmap(e[x]), e[y])
                vadd(rhs, m(e[x], A.dmap(e[y])), -1 if A.degree[x] % 2 else 1)
                if lhs != rhs:
                    return CheckResult(False, {"relation": f"Leibniz for {name}",
                                               "inputs": [A.basis[x], A.basis[y]]})
    for x in range(n):
        for y in range(n):
            xy_s, xy_b = star(e[x], e[y]), bullet(e[x], e[y])
            for z in range(n):
                yz_s, yz_b = star(e[y], e[z]), bullet(e[y], e[z])
                names = [A.basis[x], A.basis[y], A.basis[z]]
                if star(xy_s, e[z]) != star(e[x], yz_s):
                    return CheckResult(False, {"relation": "associativity of *", "inputs": names})
                if bullet(xy_b, e[z]) != bullet(e[x], yz_b):
                    return CheckResult(False, {"relation": "associativity of •", "inputs": names})
                lhs = vadd(star(xy_b, e[z]), bullet(xy_s, e[z]))
                rhs = vadd(bullet(e[x], yz_s), star(e[x], yz_b))
                if lhs != rhs:
                    return CheckResult(False, {"relation": "compatibility", "inputs": names})
    return CheckResult(True)


# -- deformation retracts ---------------------------------------------------------

@dataclass
class DeformationRetract:
    big: ChainComplex
    small: ChainComplex
    incl: RatMatrix  # V -> A
    proj: RatMatrix  # A -> V
    h: RatMatrix  # A -> A, degree +1

    def __post_init__(self):
        self.incl_cols = _columns(self.incl)
        self.proj_cols = _columns(self.proj)
        self.h_cols = _columns(self.h)

    def identities(self):
        """Name -> bool for the retract identities and side conditions."""
        A, V = self.big, self.small
        i, p, h = self.incl, self.proj, self.h
        dA, dV = A.d, V.d
        ida, idv = RatMatrix.identity(A.dim), RatMatrix.identity(V.dim)

        def eq(a, b):
            return a == b

        checks = {
            "p i = id": eq(p @ i, idv) if V.dim else True,
            "id - i p = d h + h d": eq(ida - i @ p, dA @ h + h @ dA) if A.dim else True,
            "i chain map": eq(dA @ i, i @ dV) if V.dim and A.dim else True,
            "p chain map": eq(dV @ p, p @ dA) if V.dim and A.dim else True,
            "h h = 0": (h @ h).is_zero() if A.dim else True,
            "h i = 0": (h @ i).is_zero() if V.dim and A.dim else True,
            "p h = 0": (p @ h).is_zero() if V.dim and A.dim else True,
        }
        for r in range(h.rows):
            for c in range(h.cols):
                if h[r, c] and A.degree[r] != A.degree[c] + 1:
                    checks["h has degree +1"] = False
        checks.setdefault("h has degree +1", True)
        return checks

    def is_valid(self):
        return all(self.identities().values())


def build_retract(A, keep=None):
    """Deformation retract of A onto a copy of its homology.

    Per degree n the space splits as B_n ⊕ H_n ⊕ C_n, with B the boundaries,
    H a complement of B in the cycles and C a complement of the cycles; h
    inverts d from B_n back onto C_{n+1}.  The small complex is H with zero
    differential, unless ``keep`` names acyclic pairs to leave in it: a set
    of (n, k) meaning the k-th vector of C_n and its boundary.
    """
    keep = set(keep or ())
    n_total = A.dim
    degs = sorted(A.degrees)
    idx = {n: A.indices_in_degree(n) for n in degs}

    def local(vec_local, n):
        return {idx[n][k]: v for k, v in enumerate(vec_local) if v}

    cycles, comps = {}, {}
    for n in degs:
        dim_n = len(idx[n])
        if idx.get(n - 1):
            D = RatMatrix([[A.d[r, c] for c in idx[n]] for r in idx[n - 1]], dim_n)
            Z = nullspace_basis(D)
        else:
            Z = [tuple(Fraction(int(r == c)) for r in range(dim_n)) for c in range(dim_n)]
        cycles[n] = Z
        C = []
        span = list(Z)
        for k in range(dim_n):
            e = tuple(Fraction(int(r == k)) for r in range(dim_n))
            if rank_of(span + [e], dim_n) > len(span):
                span.append(e)
                C.append(e)
        comps[n] = C

    bounds, homol = {}, {}
    for n in degs:
        dim_n = len(idx[n])
        B = []
        for c in comps.get(n + 1, []):
            image = A.dmap(local(c, n + 1))
            B.append(tuple(image.get(g, Fraction(0)) for g in idx[n]))
        bounds[n] = B
        H = []
        span = list(B)
        for z in cycles[n]:
            if rank_of(span + [z], dim_n) > len(span):
                span.append(z)
                H.append(z)
        homol[n] = H

    # small basis per degree: homology, kept C vectors, boundaries of kept C_{n+1}
    small = {}
    for n in degs:
        names = [f"H{n}_{k}" for k in range(len(homol[n]))]
        names += [f"C{n}_{k}" for k in range(len(comps[n])) if (n, k) in keep]
        names += [f"B{n}_{k}" for k in range(len(bounds[n])) if (n + 1, k) in keep]
        if names:
            small[n] = names
    d_entries = [(f"C{n}_{k}", f"B{n - 1}_{k}", 1) for (n, k) in sorted(keep)]
    V = ChainComplex(small, d_entries)
    incl = [[Fraction(0)] * V.dim for _ in range(n_total)]
    proj = [[Fraction(0)] * n_total for _ in range(V.dim)]
    h = [[Fraction(0)] * n_total for _ in range(n_total)]
    for n in degs:
        dim_n = len(idx[n])
        nb, nh = len(bounds[n]), len(homol[n])
        frame = bounds[n] + homol[n] + comps[n]
        # frame position -> small basis index, for frame vectors that survive into V
        survive = {}
        for k in range(nb):
            if (n + 1, k) in keep:
                survive[k] = V.index[f"B{n}_{k}"]
        for k in range(nh):
            survive[nb + k] = V.index[f"H{n}_{k}"]
        for k in range(len(comps[n])):
            if (n, k) in keep:
                survive[nb + nh + k] = V.index[f"C{n}_{k}"]
        for pos, v in survive.items():
            for r, val in enumerate(frame[pos]):
                incl[idx[n][r]][v] = val
        Pinv = inverse(RatMatrix.from_columns(frame, dim_n))
        for col in range(dim_n):
            coords = Pinv.column(col)
            for pos, v in survive.items():
                proj[v][idx[n][col]] = coords[pos]
            for k in range(nb):
                if coords[k] and (n + 1, k) not in keep:
                    for r, val in enumerate(comps[n + 1][k]):
                        if val:
                            h[idx[n + 1][r]][idx[n][col]] += coords[k] * val
    return DeformationRetract(A, V, RatMatrix(incl, V.dim), RatMatrix(proj, n_total), RatMatrix(h, n_total))


def acyclic_pairs(A):
    """The (n, k) labels :func:`build_retract` accepts in ``keep``."""
    out = []
    for n in sorted(A.degrees):
        if not A.indices_in_degree(n - 1):
            continue
        D = RatMatrix([[A.d[r, c] for c in A.indices_in_degree(n)] for r in A.indices_in_degree(n - 1)],
                      len(A.indices_in_degree(n)))
        out.extend((n, k) for k in range(D.rank()))
    return out


def identity_retract(A):
    n = A.dim
    return DeformationRetract(A, A, RatMatrix.identity(n), RatMatrix.identity(n), RatMatrix.zeros(n, n))


# -- transferred structures ------------------------------------------------------

@dataclass
class TransferredStructure:
    """(i, j) -> {input index tuple: sparse output vector} on the small complex."""

    complex: ChainComplex
    ops: dict = field(default_factory=dict)

    def max_arity(self):
        return max((i + j + 1 for i, j in self.ops), default=1)

    def apply(self, ij, args):
        """Multilinear evaluation on sparse vectors."""
        table = self.ops.get(ij, {})
        out = {}
        n = ij[0] + ij[1] + 1
        if len(args) != n:
            raise ValueError("wrong number of arguments")
        for combo in product(*(a.items() for a in args)):
            key = tuple(k for k, _ in combo)
            vec = table.get(key)
            if vec:
                c = Fraction(1)
                for _, v in combo:
                    c *= v
                vadd(out, vec, c)
        return out

    def __eq__(self, other):
        if not isinstance(other, TransferredStructure):
            return NotImplemented
        a = {k: v for k, v in self.ops.items() if v}
        b = {k: v for k, v in other.ops.items() if v}
        return a == b and self.complex.basis == other.complex.basis


def default_vertex_sign(k, l):
    return -1 if (k + 1) % 2 else 1


def markl_vertex_sign(k, l):
    """(-1)^(k(l+1)): fails the relations once d_V != 0, kept as a negative control."""
    return -1 if (k * (l + 1)) % 2 else 1


@dataclass
class TransferConfig:
    max_weight: int = 8
    vertex_sign: object = default_vertex_sign


def transfer(alg, r, max_weight, config=None):
    """Transferred As²∞ operations m_ij for 1 <= i + j <= max_weight."""
    config = config or TransferConfig()
    if alg.complex is not r.big:
        if alg.complex.basis != r.big.basis or alg.complex.d != r.big.d:
            raise ContractError("algebra and retract live on different complexes")
    if max_weight < 1:
        raise ContractError("max_weight must be at least 1")
    if max_weight > config.max_weight:
        raise ContractError(f"max_weight {max_weight} exceeds the configured budget {config.max_weight}")
    A, V = r.big, r.small
    sign = config.vertex_sign
    star, bullet = alg.star, alg.bullet
    degA, degV = A.degree, V.degree
    present = set(degA)
    memo = {}

    def lam(i, j, xs):
        # λ_ij(i x_1, ..., i x_n) as a sparse vector in A
        key = (i, j, xs)
        if key in memo:
            return memo[key]
        n = i + j + 1
        if n == 1:
            res = dict(r.incl_cols[xs[0]])
            memo[key] = res
            return res
        res = {}
        if sum(degV[x] for x in xs) + n - 2 in present:
            for g, (gi, gj) in ((star, (1, 0)), (bullet, (0, 1))):
                ri, rj = i - gi, j - gj
                if ri < 0 or rj < 0:
                    continue
                for i1 in range(ri + 1):
                    for j1 in range(rj + 1):
                        i2, j2 = ri - i1, rj - j1
                        k, l = i1 + j1 + 1, i2 + j2 + 1
                        left = lam(i1, j1, xs[:k])
                        if not left:
                            continue
                        right = lam(i2, j2, xs[k:])
                        if not right:
                            continue
                        if k > 1:
                            left = apply_cols(r.h_cols, left)
                        if l > 1:
                            right = apply_cols(r.h_cols, right)
                        if not left or not right:
                            continue
                        # Koszul sign: the right branch (degree l - 1 after h) passes the first k inputs
                        kos = (l - 1) * sum(degV[x] for x in xs[:k]) if l > 1 else 0
                        c = sign(k, l) * (-1 if kos % 2 else 1)
                        vadd(res, g(left, right), c)
        memo[key] = res
        return res

    ops = {}
    for w in range(1, max_weight + 1):
        n = w + 1
        for i in range(w + 1):
            j = w - i
            table = {}
            for xs in product(range(V.dim), repeat=n):
                if sum(degV[x] for x in xs) + n - 2 not in set(degV):
                    continue
                out = apply_cols(r.proj_cols, lam(i, j, xs))
                if out:
                    table[xs] = out
            ops[(i, j)] = table
    return TransferredStructure(V, ops)


def verify_infinity_relations(t, V, n_max, sign=None, inputs=None):
    """Check the As²∞ relations of ``t`` on every basis tuple up to arity n_max.

    Arity 2 asks that m_10 and m_01 be chain maps; from arity 3 on,
    ``d m_ij - (-1)^|m_ij| m_ij d`` must equal the image of ∂(m_ij).
    ``nontrivial`` in the result counts tuples where some term was nonzero.
    ``inputs`` restricts the check to the given tuples of basis indices.
    """
    deg = V.degree
    kwargs = {} if sign is None else {"sign": sign}
    e = [{k: Fraction(1)} for k in range(V.dim)]
    checked = nontrivial = 0
    for n in range(2, n_max + 1):
        for i in range(n):
            j = n - 1 - i
            if (i, j) not in t.ops:
                return CheckResult(False, {"missing": f"m[{i},{j}]"}, checked, nontrivial)
            mdeg = i + j - 1
            terms = cobar_differential(i, j, **kwargs).terms if n > 2 else []
            tuples = product(range(V.dim), repeat=n) if inputs is None else [xs for xs in inputs if len(xs) == n]
            for xs in tuples:
                args = [e[x] for x in xs]
                seen = False
                lhs = V.dmap(t.apply((i, j), args))
                seen |= bool(lhs)
                for k in range(n):
                    dx = V.dmap(args[k])
                    if not dx:
                        continue
                    s = mdeg + sum(deg[x] for x in xs[:k])
                    part = t.apply((i, j), args[:k] + [dx] + args[k + 1:])
                    seen |= bool(part)
                    vadd(lhs, part, 1 if s % 2 else -1)
                rhs = {}
                for term in terms:
                    p, q = term.p, term.q
                    inner = t.apply((term.inner.i, term.inner.j), args[p:p + q])
                    if not inner:
                        continue
                    s = term.coeff * (-1 if (term.inner.degree * sum(deg[x] for x in xs[:p])) % 2 else 1)
                    out = t.apply((term.outer.i, term.outer.j), args[:p] + [inner] + args[p + q:])
                    seen |= bool(out)
                    vadd(rhs, out, s)
                checked += 1
                nontrivial += seen
                if lhs != rhs:
                    return CheckResult(False, {
                        "operation": f"m[{i},{j}]",
                        "inputs": [V.basis[x] for x in xs],
                        "lhs": {V.basis[k]: str(v) for k, v in sorted(lhs.items())},
                        "rhs": {V.basis[k]: str(v) for k, v in sorted(rhs.items())},
                    }, checked, nontrivial)
    return CheckResult(True, None, checked, nontrivial)


# -- random test algebras ---------------------------------------------------------

def random_complex(seed, dims):
    """A random complex: a scaled matching of basis vectors across d, in a random basis."""
    rng = _random.Random(seed)
    degrees = {int(deg): [f"e{deg}_{k}" for k in range(cnt)] for deg, cnt in sorted(dims.items()) if cnt}
    deg = [d_ for d_ in degrees for _ in degrees[d_]]
    n = len(deg)
    d0 = [[Fraction(0)] * n for _ in range(n)]
    free = list(range(n))
    rng.shuffle(free)
    used = set()
    for src in free:
        if src in used:
            continue
        targets = [t for t in range(n) if t not in used and t != src and deg[t] == deg[src] - 1]
        if targets and rng.random() < 0.7:
            tgt = rng.choice(targets)
            d0[tgt][src] = Fraction(rng.choice((1, -1, 2, 3)), rng.choice((1, 1, 2)))
            used.update((src, tgt))
    g = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    order = list(range(n))
    rng.shuffle(order)
    for a in range(n):
        for b in range(a + 1, n):
            r, c = order[a], order[b]
            if deg[r] == deg[c] and rng.random() < 0.5:
                g[r][c] = Fraction(rng.randint(-2, 2))
    if not n:
        return ChainComplex(degrees)
    G = RatMatrix(g, n)
    return ChainComplex(degrees, G @ RatMatrix(d0, n) @ inverse(G))


def random_dg_as2(seed, dims, unit=None, layers=4, tries=20):
    """A random dg As²-algebra with ``dims[deg]`` basis vectors in degree deg.

    Non-unit basis vectors get a layer 1..layers, products raise layers
    (layer(xy) >= layer(x) + layer(y), anything past the top vanishes) and d
    keeps the filtration.  Structure constants are solved one target layer
    at a time: with everything below fixed, the Leibniz rule,
    associativity and compatibility are linear in the constants landing in
    the current layer.  An inconsistent layer restarts the draw.  An
    optional unit in degree 0 serves both products.
    """
    rng = _random.Random(seed)
    dims = {int(k): int(v) for k, v in dims.items() if int(v) > 0}
    if sum(dims.values()) > 8:
        raise ContractError("random_dg_as2 is meant for total dimension <= 8")
    degrees = {deg: [f"e{deg}_{k}" for k in range(cnt)] for deg, cnt in sorted(dims.items())}
    n = sum(dims.values())
    if not n:
        A0 = ChainComplex(degrees)
        return DgAs2Algebra(A0, Bilinear(A0), Bilinear(A0))
    deg = [d_ for d_ in sorted(dims) for _ in range(dims[d_])]
    if unit is None:
        unit = dims.get(0, 0) >= 1 and rng.random() < _UNIT_P
    if unit and not dims.get(0):
        raise ContractError("a unit needs a degree-0 basis vector")
    u = deg.index(0) if unit else None
    weights = [2.0 ** -k for k in range(layers)]
    layer = {k: rng.choices(range(1, layers + 1), weights=weights)[0] for k in range(n) if k != u}
    nonunit = sorted(layer)

    # d in the frame: a random matching that raises the layer, preferably by one
    d0 = [[Fraction(0)] * n for _ in range(n)]
    used = set()
    for src in rng.sample(nonunit, len(nonunit)):
        if src in used:
            continue
        targets = [t for t in nonunit if t not in used and deg[t] == deg[src] - 1 and layer[t] > layer[src]]
        if targets and rng.random() < 0.9:
            near = [t for t in targets if layer[t] == layer[src] + 1]
            tgt = rng.choice(near or targets)
            d0[tgt][src] = Fraction(rng.choice((1, 1, 2, -1)))
            used.update((src, tgt))
    # frame change: degree preserving and unitriangular in (layer, index) order
    g = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    for c in nonunit:
        for r in nonunit:
            if (layer[r], r) > (layer[c], c) and deg[r] == deg[c] and rng.random() < 0.4:
                g[r][c] = Fraction(rng.choice((-1, 1, 2)))
    G = RatMatrix(g, n)
    A = ChainComplex(degrees, G @ RatMatrix(d0, n) @ inverse(G))

    frame = None
    for _ in range(tries):
        frame = _draw_products(rng, nonunit, layer, deg, d0, layers)
        if frame is not None:
            break
    frame = frame or ({}, {})

    Gcols, Ginv_cols = _columns(G), _columns(inverse(G))

    def to_std(frame_table):
        out = {}
        for a in range(n):
            for b in range(n):
                acc = {}
                for x, vx in Ginv_cols[a].items():
                    for y, vy in Ginv_cols[b].items():
                        vec = frame_table.get((x, y))
                        if vec:
                            vadd(acc, apply_cols(Gcols, vec), vx * vy)
                if acc:
                    out[(a, b)] = acc
        return out

    tables = [to_std(t) for t in frame]
    if u is not None:
        for table in tables:
            for k in range(n):
                table[(u, k)] = vadd(table.get((u, k), {}), {k: Fraction(1)})
                if k != u:
                    table[(k, u)] = vadd(table.get((k, u), {}), {k: Fraction(1)})
    alg = DgAs2Algebra(A, Bilinear(A, tables[0]), Bilinear(A, tables[1]))
    check = check_dg_as2(alg)
    if not check:
        raise RuntimeError(f"random_dg_as2 produced an invalid algebra: {check.witness}")
    return alg


def _draw_products(rng, nonunit, layer, deg, d0, layers):
    """Frame structure constants of (*, •) as (x, y) -> {z: c} tables, or None."""
    allowed = {}  # (x, y) -> admissible output vectors
    for x in nonunit:
        for y in nonunit:
            zs = [z for z in nonunit if deg[z] == deg[x] + deg[y] and layer[z] >= layer[x] + layer[y]]
            if zs:
                allowed[(x, y)] = zs
    dcol = {c: {r: d0[r][c] for r in nonunit if d0[r][c]} for c in nonunit}
    drow = {r: {c: d0[r][c] for c in nonunit if d0[r][c]} for r in nonunit}
    known = [{}, {}]  # (x, y, z) -> value, for z below the current layer

    for L in range(2, layers + 1):
        var = {}
        for p_ in range(2):
            for (x, y), zs in allowed.items():
                for z in zs:
                    if layer[z] == L:
                        var[(p_, x, y, z)] = len(var)
        eqs = []

        def const(p_, x, y, z):
            return known[p_].get((x, y, z), Fraction(0))

        def coef(p_, x, y, z):
            # a constant landing in layer L is a variable, anything else is known
            if layer[z] == L:
                return var.get((p_, x, y, z))
            return None

        def add(lin, p_, x, y, z, c):
            v = coef(p_, x, y, z)
            if v is None:
                lin[None] = lin.get(None, 0) + c * const(p_, x, y, z)
            else:
                lin[v] = lin.get(v, 0) + c

        targets = [w for w in nonunit if layer[w] == L]
        for p_ in range(2):
            for x in nonunit:
                sx = -1 if deg[x] % 2 else 1
                for y in nonunit:
                    for w in targets:
                        lin = {}
                        for z, c in drow[w].items():
                            if z in allowed.get((x, y), ()):
                                add(lin, p_, x, y, z, c)
                        for x2, c in dcol[x].items():
                            if w in allowed.get((x2, y), ()):
                                add(lin, p_, x2, y, w, -c)
                        for y2, c in dcol[y].items():
                            if w in allowed.get((x, y2), ()):
                                add(lin, p_, x, y2, w, -sx * c)
                        eqs.append(lin)

        def left(lin, p1, p2, x, y, z, w, sign):
            # sign * ((x p1 y) p2 z)_w
            for mid in allowed.get((x, y), ()):
                a = const(p1, x, y, mid)
                if a and w in allowed.get((mid, z), ()):
                    add(lin, p2, mid, z, w, sign * a)

        def right(lin, p1, p2, x, y, z, w, sign):
            # sign * (x p2 (y p1 z))_w
            for mid in allowed.get((y, z), ()):
                a = const(p1, y, z, mid)
                if a and w in allowed.get((x, mid), ()):
                    add(lin, p2, x, mid, w, sign * a)

        for x in nonunit:
            for y in nonunit:
                for z in nonunit:
                    if layer[x] + layer[y] + layer[z] > L:
                        continue
                    for w in targets:
                        for p_ in range(2):
                            lin = {}
                            left(lin, p_, p_, x, y, z, w, 1)
                            right(lin, p_, p_, x, y, z, w, -1)
                            eqs.append(lin)
                        lin = {}
                        left(lin, 1, 0, x, y, z, w, 1)    # (x•y)*z
                        left(lin, 0, 1, x, y, z, w, 1)    # (x*y)•z
                        right(lin, 0, 1, x, y, z, w, -1)  # x•(y*z)
                        right(lin, 1, 0, x, y, z, w, -1)  # x*(y•z)
                        eqs.append(lin)

        rows, rhs = [], []
        for lin in eqs:
            c0 = lin.pop(None, Fraction(0))
            row = [Fraction(0)] * len(var)
            for v, c in lin.items():
                row[v] += c
            if any(row):
                rows.append(row)
                rhs.append(-c0)
            elif c0:
                return None
        if rows and var:
            m = RatMatrix(rows, len(var))
            sol = solve(m, rhs)
            if sol is None:
                return None
            sol = list(sol)
            for v in nullspace_basis(m):
                c = rng.choice((-1, 0, 1, 1, 2))
                if c:
                    sol = [a + c * b for a, b in zip(sol, v)]
        else:
            sol = [Fraction(rng.choice((-1, 0, 1, 1, 2))) for _ in var]
        for (p_, x, y, z), v in var.items():
            if sol[v]:
                known[p_][(x, y, z)] = sol[v]

    tables = ({}, {})
    for p_ in range(2):
        for (x, y, z), c in known[p_].items():
            tables[p_].setdefault((x, y), {})[z] = c
    return tables
