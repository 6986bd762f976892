"""teichlab: a computational laboratory for singular-flat surfaces induced by
quadratic differentials, their Teichmuller-ray limits, weighted train tracks,
crowned hyperbolic boundary data, and a planar harmonic-map solver."""

__version__ = "0.1.0"
