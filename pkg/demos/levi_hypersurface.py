# Multipliers of Im w = Re(w) * |z|^2, step by step.
from crjet import (Jet, VariableSet, build_hypersurface_frame, build_expansion_table,
                   multiplier_determinant, s_factor, analyze)

V = VariableSet(1)  # z1, zb1, s
z, zb = Jet.var(V, "z1", 6), Jet.var(V, "zb1", 6)

F = build_hypersurface_frame(1, 1, z * zb)  # n=1, m=1, phi = z zb
print("CR field     :", F.L[0])
print("theta        :", F.theta[0])

T = build_expansion_table(F, 2)
for alpha in [(0,), (1,), (2,)]:
    print("row", alpha, [c.to_expression() for c in T.row(alpha, 1)])

D = multiplier_determinant(T, [(0,), (1,)], [1, 1])
print("D(0, e1)     :", D.to_expression())

fac = s_factor(D)  # s^k times a unit
print("s-order      :", fac.k, " unit at 0:", fac.unit0)

rep = analyze(F, 2)
print("finite order :", rep.finite_nondeg_order)  # vanishes on s = 0, so absent
print("weak order   :", rep.weak_nondeg_order)
print("CR regular   :", rep.cr_regular)
