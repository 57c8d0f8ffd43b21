"""Which states resolve the identity under which product?

Sandwiching the star-integrated projector family between momentum states
gives an amplitude multiplying delta2(p - p').  The family resolves the
identity exactly when the diagonal amplitude is 1:

  * position-like states do, under Moyal (Phi = 0) -- and only then;
  * coherent states do, under Voros -- their diagonal amplitude is 1
    for every p, while under Moyal it decays like exp(-theta|p|^2/2).
"""

import numpy as np

from genstar import (
    coherent_roi_amplitude,
    coherent_roi_kernel,
    make_params,
    position_roi_amplitude,
    preset_params,
)

moyal = preset_params("moyal", 1.0)
voros = preset_params("voros", 1.0)
generic = make_params(1.0, phi11=0.2, phi22=0.2)

print("== position-like states, diagonal amplitude at p = (1, 1) ==")
p = (1.0, 1.0)
for name, params in (("moyal", moyal), ("voros", voros), ("generic", generic)):
    amp = position_roi_amplitude(params, p, p)
    verdict = "resolves" if abs(amp - 1) < 1e-12 else "does NOT resolve"
    print(f"{name:8s} amplitude = {amp:.6f}   -> {verdict}")

print()
print("== coherent states, diagonal amplitude along |p| ==")
for r in (0.0, 0.5, 1.0, 1.5, 2.0):
    pz = complex(r, 0.0)
    am = coherent_roi_amplitude(moyal, pz, pz)
    av = coherent_roi_amplitude(voros, pz, pz)
    print(f"|p| = {r:3.1f}   moyal {am.real:8.4f}   voros {av.real:8.4f}")

print()
print("== the whole kernel as a quadratic form ==")
kern = coherent_roi_kernel(voros)
print("Q (4x4, rows p1 p2 p1' p2'):")
print(np.round(kern.quad, 6))
print("diagonal_only:", kern.diagonal_only)

print()
print("== scan a grid: max deviation from identity ==")
grid = np.linspace(-2, 2, 9)
for name, params in (("moyal", moyal), ("voros", voros), ("generic", generic)):
    dev_pos = max(
        abs(position_roi_amplitude(params, (a, b), (a, b)) - 1) for a in grid for b in grid
    )
    dev_coh = max(
        abs(coherent_roi_amplitude(params, complex(a, b), complex(a, b)) - 1)
        for a in grid
        for b in grid
    )
    print(f"{name:8s} position {dev_pos:9.3e}   coherent {dev_coh:9.3e}")
