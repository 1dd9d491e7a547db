# Replicator verification configuration
import math

# Numeric tolerances
CONSTRUCTION_TOL = 1e-9     # normalization, Hermiticity, trace, PSD at construction
ORACLE_TOL = 1e-10          # closed form vs brute-force construction
PARAM_TOL = 1e-12           # ParamQubit relations and SuperpositionSpec normalization
ZERO_TOL = 1e-12            # overlap counted as zero by the existence classifier
STRONG_GAP_MIN = 1e-6       # minimum gap / distance required away from the boundary
STRONG_REGIME_PQ_MIN = 0.05
STRONG_REGIME_PQR_MAX = 0.95

# Refuse to build states larger than this
MAX_TOTAL_DIM = 2 ** 20

# Blank states are the designated |0> of a BLANK_DIM-dimensional factor
BLANK_DIM = 2

# Machine defaults: m auxiliary blanks, n blanks in total
DEFAULT_M = 1
DEFAULT_N = 4

# Run defaults
DEFAULT_SEED = 0
DEFAULT_GRID = "default"
DEFAULT_FORMAT = "json"
REPORT_DIGITS = 12
LINEARITY_SAMPLES = 100
LOG_LEVEL = "INFO"

# Single-point defaults
DEFAULT_A = 0.6
DEFAULT_C = 0.6
DEFAULT_THETA = math.pi / 2
DEFAULT_Q_MAG = 0.5
DEFAULT_R_MAG = 0.5
