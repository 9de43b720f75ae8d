"""Write the pinned algebra fixtures used by the tests and the README.

massey4.json: four basis vectors x, y (degree 0), u, w (degree 1) with
du = y.  Since x*x = y is a boundary, h(x*x) = u and the transferred
ternary operations on homology pick up u*x and x*u.

unital6.json: a random unital algebra whose transferred structure has
nonzero binary and higher operations together, so the arity 4 and 5
relations involve genuine cancellations.

balanced12.json: a strict algebra (star = bullet) built so that m_40(a,b,c,d)
comes only from the balanced tree (h(ab))(h(cd)), while m_30(a,b,m_30(c,d,e))
comes from combs.  The arity 5 relation on (a,b,c,d,e) then fixes the sign of
the balanced tree against the combs, which the random algebras are too small
to do.  It is the strongest check on the vertex-sign convention.

Usage: python3 scripts/make_fixtures.py [outdir]
"""

import pathlib
import sys

from operadkit import jsonio
from operadkit.transfer import (Bilinear, ChainComplex, DgAs2Algebra, build_retract, check_dg_as2,
                                random_dg_as2, transfer, verify_infinity_relations)

UNITAL_SEED, UNITAL_DIMS = 12, {0: 3, 1: 3}


def massey4():
    A = ChainComplex({0: ["x", "y"], 1: ["u", "w"]}, [("u", "y", 1)])
    x, y, u, w = (A.index[k] for k in "xyuw")
    star = {(x, x): {y: 1}, (u, x): {w: 1}, (x, u): {w: 3}}
    bullet = {(x, x): {y: 2}, (u, x): {w: -1}, (x, u): {w: 5}}
    return DgAs2Algebra(A, Bilinear(A, star), Bilinear(A, bullet))


def balanced12():
    A = ChainComplex({0: ["a", "b", "c", "d", "e", "beta", "gamma"], 1: ["B", "G", "eps"], 2: ["omega", "zeta"]},
                     [("B", "beta", 1), ("G", "gamma", 1)])
    products = {("a", "b"): "beta", ("c", "d"): "gamma", ("B", "G"): "omega", ("G", "e"): "eps",
                ("omega", "e"): "zeta", ("B", "eps"): "zeta"}
    table = {(A.index[x], A.index[y]): {A.index[z]: 1} for (x, y), z in products.items()}
    return DgAs2Algebra(A, Bilinear(A, table), Bilinear(A, table))


def unital6():
    return random_dg_as2(UNITAL_SEED, UNITAL_DIMS, unit=True, layers=5)


def main(outdir):
    outdir = pathlib.Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for name, alg in (("massey4", massey4()), ("unital6", unital6()), ("balanced12", balanced12())):
        assert check_dg_as2(alg)
        r = build_retract(alg.complex)
        res = verify_infinity_relations(transfer(alg, r, 4), r.small, 5)
        assert res, res.witness
        (outdir / f"{name}.json").write_text(jsonio.dumps(jsonio.algebra_to_data(alg)), encoding="utf-8")
        print(f"{name}: dim {alg.complex.dim} -> {r.small.dim}, arity 5 relations ok "
              f"({res.checked} tuples, {res.nontrivial} nontrivial)")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures")
