"""Exact symbolic verification of classical and quantum meron solutions.

Submodules: scalars, ncalg, hopf, calculus, hodge, gauge, scenarios, report, cli.
"""

__version__ = "0.1.0"
