# phi = z1 zb1 + z1^2 zb2 + zb1^2 z2 only becomes nondegenerate at second order.
from crjet import (Jet, VariableSet, build_hypersurface_frame, build_expansion_table,
                   multiplier_determinant, s_factor, weak_nondegeneracy_order)

V = VariableSet(2)
z1, zb1, z2, zb2 = (Jet.var(V, name, 8) for name in ("z1", "zb1", "z2", "zb2"))
phi = z1 * zb1 + z1 ** 2 * zb2 + zb1 ** 2 * z2

for k in (1, 2, 3):
    print(f"weakly nondegenerate through k={k}:", weak_nondegeneracy_order(phi, 2, k))

F = build_hypersurface_frame(2, 1, phi)
T = build_expansion_table(F, 2)

# first-order rows give a multiplier that vanishes on all of z1 zb1 = 0
D1 = multiplier_determinant(T, [(0, 0), (1, 0), (0, 1)], [1, 1, 1])
print("D(0, e1, e2)  =", D1.to_expression() or "0")

# adding the second zb1-derivative fixes it
D2 = multiplier_determinant(T, [(0, 0), (1, 0), (2, 0)], [1, 1, 1])
fac = s_factor(D2)
print("D(0, e1, 2e1) = s^%d * unit, unit(0) = %s" % (fac.k, fac.unit0))
