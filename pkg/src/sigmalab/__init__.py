"""sigmalab: a desk-scale numerical laboratory for observation and control
of waves and heat from interior hypersurfaces of model surfaces.

The package is organized around five building blocks:

* :mod:`sigmalab.geometry` -- the model surfaces (flat torus, round sphere,
  warped-product surface of revolution), their observation curves, and
  quadrature.
* :mod:`sigmalab.raydyn` -- geodesic/bicharacteristic ray dynamics, specular
  boundary reflection, and a finite-resolution transversal-crossing checker.
* :mod:`sigmalab.spectral` -- explicit and separated-variable Laplace
  eigenmodes, their Cauchy data on the observation curves, and the
  quantitative trace lower-bound / counterexample sweeps.
* :mod:`sigmalab.lrcontrol` -- diagonal heat semigroup machinery:
  observability Gramians, transmutation kernel, minimal-norm and staged
  null-control synthesis.
* :mod:`sigmalab.cli` -- the ``lab`` experiment runner.
"""

__version__ = "0.1.0"

__all__ = ["__version__"]
