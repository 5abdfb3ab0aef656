"""
Constants shared by the estimation modules, the CLI and the HTTP service.
"""

# CLI exit codes
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_SIZE_MISMATCH = 4
EXIT_UNKNOWN_ID = 5

# Quadrature schedule
QUAD_START_NODES = 2 ** 12 + 1
QUAD_MAX_NODES = 2 ** 16 + 1
QUAD_TOLERANCE = 1e-8
ORACLE_NODES = 2 ** 16 + 1

# Kernel transform default node count across the scaling support
KERNEL_QUAD_POINTS = 1024

# Sup-norm grids
MIN_SUP_GRID = 2 ** 10
DEFAULT_FIT_GRID = 2 ** 10 + 1

# Simulation
MIN_REPLICATES = 50
SEED_MULTIPLIER = 0x9E3779B97F4A7C15
SEED_MASK = (1 << 64) - 1
PRNG_NAME = "PCG64"

DEGENERATE_VARIANCE_WARNING = (
    "plug-in variance is below the floor: under an exact null the limit law "
    "is degenerate and the normal p-value is not calibrated"
)

DEGENERATE_NULL_WARNING = (
    "test against the no-divergence value: at f = g the influence function is "
    "constant, so the limit variance is 0 and the normal p-value is not calibrated"
)

BOUNDARY_WARNING = (
    "translates carrying data cross a domain end: the estimate is not boundary "
    "corrected, so its bias near the ends shifts intervals and p-values"
)

# Synthetic catalog identifiers, all supported on [0, 1]
CATALOG_IDS = ("U", "LIN", "BUMP", "COS")
