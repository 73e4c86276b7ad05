"""Verification laboratory and chart-atlas integrator for the Painleve II
space of initial conditions.

Subpackages by layer:

* :mod:`p2lab.exact` -- exact multivariate polynomial / rational-function
  arithmetic over the rationals (the symbolic kernel everything else uses).
* :mod:`p2lab.intlinalg` -- integer linear algebra (Smith normal form,
  saturated kernels, unimodular inverses).
* :mod:`p2lab.lattice` -- the rank-10 intersection lattice of the surface,
  its boundary chain, and the named curve classes.
* :mod:`p2lab.blowup` -- the eight-step blow-up engine that recomputes
  curve classes and intersection tables per parameter regime.
* :mod:`p2lab.weyl` -- reflection-group action on the lattice and the
  translation orbit with its degree-growth bookkeeping.
* :mod:`p2lab.backlund` -- symmetries of the flow as exact birational maps,
  checked against the differential equation itself.
* :mod:`p2lab.atlas` -- the three coordinate charts, their transition maps,
  Hamiltonians, and cocycle/period data.
* :mod:`p2lab.flow` -- compiled numeric vector fields and the adaptive
  chart-switching integrator that continues solutions through poles.
* :mod:`p2lab.cli` -- the ``p2lab`` command-line verification harness.
"""

__all__ = [
    "exact",
    "intlinalg",
    "lattice",
    "blowup",
    "weyl",
    "backlund",
    "atlas",
    "flow",
    "cli",
]

__version__ = "0.1.0"
