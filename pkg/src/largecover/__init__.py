"""Large cyclic covers of tunnel-number-one knot manifolds via the m-lift condition."""

__version__ = "0.1.0"
