"""
Numerical constants for the Dividend Barrier Pricer
Keep it simple - only add constants when actually needed
"""

# Normal CDF saturates to exactly 0 / 1 beyond this |x|
NORM_CDF_TAIL_CUTOFF = 40.0

# Closed-form barrier values above -slack are treated as rounding noise
BARRIER_ROUNDING_SLACK = 1e-12

# Table reproduction tolerance ladder
STRICT_TOLERANCE = 1e-4
ACCEPTED_TOLERANCE = 1e-3

# Printed MAE/RMSE that differ from recomputed values by at least this are flagged
METRIC_DISCREPANCY_THRESHOLD = 5e-5

# Sampling units (paths, or antithetic pairs) per RNG block
MC_BLOCK_UNITS = 8192
