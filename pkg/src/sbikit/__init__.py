"""sbikit: simulation-based Bayesian inference.

Neural likelihood/posterior/ratio estimation, flow-matching posterior
estimation, SMC-ABC, MCMC samplers and convergence diagnostics, benchmark
generative models, and a pipeline CLI.
"""

__version__ = "0.1.0"

from . import core, ndnet

__all__ = ["core", "ndnet", "__version__"]
