# Twisted Alexander polynomials of the two smallest knots
import numpy as np

from tapestry.presentation import load_fixture
from tapestry.reps import representation_from_lists
from tapestry.tap import twisted_alexander

# The trefoil group <y1, y2 | y1 y2 y1 = y2 y1 y2> and a representation into SL(2, F_5)
trefoil = load_fixture("trefoil")
rho = representation_from_lists(trefoil, 5, [[[0, 4], [1, 3]], [[0, 1], [4, 3]]])
print(trefoil.generators, [m.tolist() for m in rho.images])

# Both matrices have determinant 1 and the relator goes to the identity,
# so the twisted Alexander pair is defined
pair = twisted_alexander(trefoil, rho)
print("trefoil   Delta^N =", pair.numerator)
print("          Delta^D =", pair.denominator)

# Same thing for the figure-eight knot over F_7
figure8 = load_fixture("figure8")
rho8 = representation_from_lists(figure8, 7, [[[0, 4], [5, 2]], [[1, 0], [3, 1]]])
pair8 = twisted_alexander(figure8, rho8)
print("figure 8  Delta^N =", pair8.numerator)
print("          Delta^D =", pair8.denominator)

# The denominator is always det(t rho(x) - I) = t^2 - tr(rho(x)) t + 1
tr = int(rho8.images[0].trace())
print("trace of rho(y1):", tr, "-> t^2 +", (-tr) % 7, "t + 1")

# Deleting a different block column gives the same pair up to units
for j in range(figure8.num_generators):
    print("column", j, twisted_alexander(figure8, rho8, column=j).key())

# The polynomials are symmetric, so t -> 1/t changes nothing
num, den = pair8.substitute(-1)
print(np.array_equal(num.coeffs, pair8.numerator.coeffs), den == pair8.denominator)
