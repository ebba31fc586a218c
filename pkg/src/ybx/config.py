"""Global numeric configuration.

Exact backends never consult a tolerance.  The complex-float backend uses a
single global tolerance, scaled by an infinity-norm estimate of the operands
at each comparison site.
"""

DEFAULT_TOL = 1e-9
