"""
Three space forms and their curvature
=====================================

The flat space R^3, the unit sphere S^3 in R^4 and the hyperboloid model
of H^3 in Minkowski space share one interface.  Here we move a vector
around a small geodesic square and read the sectional curvature off the
rotation it picks up.
"""

import numpy as np

import vfe
from vfe.geometry import holonomy_curvature

for M in (vfe.SpaceForm.euclidean(), vfe.SpaceForm.sphere(), vfe.SpaceForm.hyperbolic()):
    p = M.pole
    # an orthonormal tangent pair at the pole
    e = np.eye(M.dim)
    e1 = vfe.project_to_tangent(M, p, e[0] if M.flat else e[1])
    e2 = vfe.project_to_tangent(M, p, e[1] if M.flat else e[2])
    e1 = e1 / vfe.norm(M, e1)
    e2 = e2 / vfe.norm(M, e2)

    # the estimate carries an O(h^2) error, so halving h cuts it by about four
    est = [holonomy_curvature(M, p, e1, e2, h) for h in (1e-2, 5e-3)]
    err = [abs(k - M.K0) for k in est]
    ratio = f"{err[0] / err[1]:.2f}" if err[1] > 0 else "n/a (exact)"
    print(f"{M.kind:>10}  K0={M.K0:+.0f}  K(h=1e-2)={est[0]:+.8f}  K(h=5e-3)={est[1]:+.8f}  error ratio={ratio}")

# Tangent vectors live in the ambient space; cross products use the model
# orientation, so the cross product of two tangent vectors is tangent too.
M = vfe.SpaceForm.sphere()
p = M.pole
u, v = np.eye(4)[1], np.eye(4)[2]
w = vfe.cross(M, p, u, v)
print("cross(e1, e2) on S^3 at the pole:", w, " <w, p> =", vfe.metric(M, w, p))
