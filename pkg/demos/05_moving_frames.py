"""
Moving frames and their connection coefficients
===============================================

The coefficient m[i, j] = h(D A^j, A^i) of a moving frame measures how
fast the frame rotates along the curve.  For the Frenet frame it is the
real skew matrix built from kappa and tau.  Rotating N + iB by the phase
exp(i int tau) gives a parallel frame whose coefficient vanishes, and the
rank-two frame {T, exp(i int tau)(N + iB)/sqrt 2} has the Hasimoto field
psi as its only entry.
"""

import numpy as np

import vfe
from vfe.frames import frenet_frame, hasimoto_frame_coefficient
from vfe.initial import perturbed_circle

M = vfe.SpaceForm.hyperbolic()
for n in (64, 128, 256):
    fr = vfe.frenet(perturbed_circle(M, n, r=1.0, m=2, eps=0.05, height=0.05))
    m = vfe.ehresmann_coefficient(frenet_frame(fr)).matrices
    o3 = max(np.max(np.abs(m[:, 1, 0] - fr.kappa)), np.max(np.abs(m[:, 2, 1] - fr.tau)))

    rho, theta = vfe.parallel_phase(fr.tau, fr.filament.ds)
    par = np.max(np.abs(vfe.ehresmann_coefficient(vfe.normal_frame(fr, rho, theta)).matrices))

    psi = vfe.hasimoto_transform(fr.kappa, fr.tau, fr.filament.ds, quadrature="spectral").psi
    u = hasimoto_frame_coefficient(fr).matrices
    u2 = np.max(np.abs(u[:, 1, 0] - np.conj(psi) / np.sqrt(2)))
    print(f"N={n:4d}  Frenet entries {o3:.2e}  parallel frame {par:.2e}  psi entry {u2:.2e}")

# N + iB is the -i eigenvector of the rotation v -> T x v of the normal plane.
print(f"\nJ eigenvector defect: {vfe.check_J_eigenvector(fr):.1e}")
