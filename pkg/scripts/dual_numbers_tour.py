#!/usr/bin/env python3
"""A short walk through F_2[x]/(x^2): Ext, resolutions, lifts and verdicts."""

from relhom import catalog
from relhom.complexes import Complex
from relhom.cotorsion import completeness_construct
from relhom.derived import gorenstein_report, lift_to_x, singularity_verdict
from relhom.modules import ShortExactSequence, cokernel, hom, kernel
from relhom.relative import ext_table, resolution_dimension, right_approximation


def main() -> None:
    e = catalog.entry("kx2")
    s, p1 = e.module("S"), e.module("P1")
    print(f"algebra {e.name}: dim {e.algebra.dim}, flags {e.flags}")

    t = ext_table(s, s, e.pair("classical"), 4)
    print(f"classical Ext^i(S, S), i = 1..4: {t.via_x} (via Y: {t.via_y})")
    t = ext_table(s, s, e.pair("gproj"), 4)
    print(f"Gorenstein-projective Ext^i(S, S): {t.via_x}")

    r = resolution_dimension(s, e.sub("proj"), 4)
    print(f"pd S = {r.label}, syzygies repeat with period {r.period}")

    lift = lift_to_x(Complex.stalk(s), e.sub("all"), 2)
    print(f"lift of S over all modules: {lift.summary()}")

    g = gorenstein_report(e.algebra, 4)
    print(f"Gorenstein: {g.gorenstein} (pd D(A) = {g.pd_dual_regular}, id A = {g.id_regular})")
    for pair in ("proj", "gproj"):
        v = singularity_verdict(e.pair(pair), e.corpus, 4)
        print(f"singularity category over {pair}: {v.verdict} {v.unresolved or v.witnesses}")

    # completeness with the witness 0 -> S -> P1 -> S -> 0
    spec = e.cotorsion["proj_all"]
    k, _ = kernel(right_approximation(s, spec.pair.x, minimal=True))
    mono = next(f for f in hom(k, p1).basis if f.is_mono())
    res = completeness_construct(s, spec, ShortExactSequence(mono, cokernel(mono)[1]))
    print(f"completeness pushout: {res.summary()}")


if __name__ == "__main__":
    main()
