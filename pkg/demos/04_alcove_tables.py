"""Exact alcove data: dominant weights, Casimirs, conformal weights, bounds.

All arithmetic is over Fractions; the truncated fermionic model reproduces
the same h values numerically (see demo 03), which pins down the dressed
Casimir convention <lambda, lambda + 2 rho>.
"""

from loopnet import affine_data, lie

su3 = lie.build_su(3)

for level in (1, 2):
    data = affine_data.level_data(su3, level)
    print(f"su(3) level {level}: c = {data.central_charge}")
    for w in affine_data.alcove(su3, level):
        print(f"  weight {w.weight}: <l,theta> = {w.theta_pairing}, "
              f"C = {w.casimir}, h = {w.conformal_weight}")

print("\nweight-norm bound per algebra (bare vs dressed maxima):")
for n in (2, 3, 4):
    alg = lie.build_su(n)
    rep = affine_data.alcove_bounds(alg, 1)
    print(f"  su({n}): c = {rep.central_charge}, m = {rep.m:.4f}, "
          f"bound {rep.h_max_bound:.6f}, bare max {rep.max_bare_h:.6f}, "
          f"dressed max {rep.max_dressed_h}")

print("\ncentral charge is at least 1 for every simple type (level 1):")
for rec in lie.simple_type_table(8):
    c = affine_data.level_data(rec, 1).central_charge
    flag = "ok" if c >= 1 else "VIOLATION"
    print(f"  {rec.family}_{rec.rank}: c = {c} {flag}")
