"""Truncated Fock-space numerics as an independent oracle.

States live as Hilbert-Schmidt operators over a truncated boson Fock
space.  The coherent/momentum overlap has a closed form; computing the
same number as a matrix trace at truncation N checks a long chain of
machinery (ladder operators, coherent vectors, a Hermitian-generator
matrix exponential) against one formula.
"""

import warnings

import numpy as np

from genstar import (
    coherent_projector,
    hs_inner,
    ladder_ops,
    make_params,
    momentum_state_op,
    overlap_vs_closedform,
    quantum_ops,
)
from genstar.suites import random_interior_state

print("== truncation artifact in the ladder algebra ==")
b, bd = ladder_ops(8)
comm = b.commutator(bd)
print("diag([b, b+]) at N=8:", np.real(np.diag(comm.matrix)))

print()
print("== overlap vs closed form, truncation sweep ==")
z, p, theta = 0.7 + 0.2j, 1.6 - 1.0j, 2.0
print(f"z = {z}, p = {p}, theta = {theta}")
for dim in (8, 16, 32, 64):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        res = overlap_vs_closedform(z, p, theta, dim)
    print(f"N = {dim:3d}   matrix {res.numeric:.10f}   closed {res.closed:.10f}   "
          f"|diff| = {res.abs_error:.3e}")

print()
print("== Heisenberg algebra on interior-supported states (N = 64) ==")
rng = np.random.default_rng(0)
ops = quantum_ops(make_params(1.0), 64)
psi = random_interior_state(rng, 64)
defect = (ops.X1(ops.P1(psi)) - ops.P1(ops.X1(psi))).matrix - 1j * psi.matrix
print("max |[X1, P1]psi - i psi| =", np.max(np.abs(defect)))

print()
print("== coherent projectors reproduce the Gaussian overlap ==")
for z1, z2 in ((0.5, 0.1 + 0.3j), (0.9j, -0.4)):
    got = hs_inner(coherent_projector(z2, 64), coherent_projector(z1, 64))
    want = np.exp(-abs(z1 - z2) ** 2)
    print(f"tr[P({z2})+ P({z1})] = {got.real:.10f}   exp(-|dz|^2) = {want:.10f}")

print()
print("== momentum states are eigenstates of the momentum action ==")
theta = 1.0
state = momentum_state_op(0.3 + 0.4j, theta, 64)
q = quantum_ops(make_params(theta), 64)
defect = (q.P(state) - (0.3 + 0.4j) * state).matrix
print("interior HS norm of P|p) - p|p):", np.linalg.norm(defect[:56, :56]))
