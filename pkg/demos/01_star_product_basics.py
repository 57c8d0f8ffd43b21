"""Star-product basics: deformed commutators on polynomials.

The product family is fixed by the noncommutativity scale theta and a
complex symmetric matrix Phi.  Phi = 0 is the Moyal product, Phi with
-i*theta on the diagonal is the Voros product, and any other symmetric
Phi is an equally valid member.  The punchline of this demo: the
coordinate commutator [x1, x2] = i*theta never sees Phi.
"""

import numpy as np

from genstar import (
    Polynomial2,
    make_params,
    preset_params,
    star_commutator,
    star_poly,
    to_complex_frame,
    xhat_apply,
)
from genstar.exprio import format_polynomial

x1 = Polynomial2.variable("x1")
x2 = Polynomial2.variable("x2")

print("== the basic products ==")
moyal = preset_params("moyal", 1.0)
voros = preset_params("voros", 1.0)
generic = make_params(1.0, phi11=0.3 - 0.2j, phi12=0.1j, phi22=-0.5)

for name, params in (("moyal", moyal), ("voros", voros), ("generic", generic)):
    prod = star_poly(x1, x2, params)
    comm = star_commutator(x1, x2, params)
    print(f"{name:8s} x1 * x2 = {format_polynomial(prod)}")
    print(f"{name:8s} [x1, x2] = {format_polynomial(comm)}   <- always i*theta")

print()
print("== higher-degree commutators terminate exactly ==")
f = x1**2 * x2 + 3 * x2
print("[x1^2*x2 + 3*x2, x2] under moyal =", format_polynomial(star_commutator(f, x2, moyal)))

print()
print("== the deformed coordinate operators do the same job ==")
rng = np.random.default_rng(0)
test = x1 * x2 + 2j * x2**2
lhs = xhat_apply(1, test, generic)
rhs = star_poly(x1, test, generic)
print("xhat_1(f) == x1 * f coefficientwise:", lhs.max_diff(rhs) < 1e-12)

print()
print("== the same product in complex coordinates z, zbar ==")
z = Polynomial2.variable("z")
zbar = Polynomial2.variable("zbar")
print("voros:  z * zbar =", format_polynomial(star_poly(z, zbar, voros)))
print("moyal:  z * zbar =", format_polynomial(star_poly(z, zbar, moyal)))
print(
    "change of variables maps one frame onto the other:",
    to_complex_frame(star_poly(x1, x2, moyal), 1.0).max_diff(
        star_poly(to_complex_frame(x1, 1.0), to_complex_frame(x2, 1.0), moyal)
    )
    < 1e-12,
)
