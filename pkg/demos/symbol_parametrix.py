# Symbol calculus in one real variable x with dual variable xi1.
from crjet import (ClassicalSymbol, I, Jet, RationalForm, VariableSet, compose,
                   parametrix, build_cr_system_symbol, build_hypersurface_frame, is_elliptic_at)

X = VariableSet(0, 1, ["x"])
x = RationalForm.from_jet(Jet.var(X, "x", 6))
xi = RationalForm.xi(X, 0)

def scalar(order, *terms):
    return ClassicalSymbol(order, [[[t]] for t in terms])

# composing D_x with multiplication by x picks up the commutator term -i
c = compose(scalar(1, xi), scalar(0, x), 2)
print("xi # x       :", [c.term(j).entries[0][0].to_text() for j in range(2)])

p = scalar(1, xi * I + x * xi, x * x)  # principal part (i + x) xi, nonzero for real x
q = parametrix(p, 3)
for j in range(3):
    print(f"q({-1 - j})        :", q.term(j).entries[0][0].to_text())

r = compose(q, p, 3)
print("q # p        :", [r.term(j).entries[0][0].to_text() for j in range(3)])

# the CR operator of a flat hypersurface is characteristic exactly along ds
P = build_cr_system_symbol(build_hypersurface_frame(1, 1, Jet.zero(VariableSet(1), 4)))
print("elliptic at ds:", is_elliptic_at(P, (0, 0, 0), (0, 0, 1)))
print("elliptic at dx:", is_elliptic_at(P, (0, 0, 0), (1, 0, 0)))
