"""Central config values, with env vars overriding defaults."""
import os


def _env_int(name, default):
    # accepts decimal or 0x-prefixed hex; anything else falls back to the default
    raw = os.environ.get(name, "").strip()
    if not raw:
        return default
    try:
        return int(raw, 0)
    except ValueError:
        return default


# default experiment seed; set QHEOT_SEED to override (decimal or 0x hex)
DEFAULT_SEED = _env_int("QHEOT_SEED", 0xC0FFEE)

# log level for app.py and the cli entry point
LOG_LEVEL = os.environ.get("QHEOT_LOG_LEVEL", "INFO").upper()

# where relative --out names land; set QHEOT_OUTPUT_DIR for local runs or tests
OUTPUT_DIR = os.environ.get("QHEOT_OUTPUT_DIR", "./artifacts")

# hermitian eigensolver backend: "lapack" (numpy.linalg.eigh) or "jacobi"
EIGENSOLVER = os.environ.get("QHEOT_EIGENSOLVER", "lapack").strip().lower()
if EIGENSOLVER not in ("lapack", "jacobi"):
    EIGENSOLVER = "lapack"

# size of the seeded random candidate-input sets used by the metric evaluators
_def = os.environ.get("QHEOT_RANDOM_INPUTS")
RANDOM_INPUTS = max(0, int(_def)) if (_def and _def.isdigit()) else 64

# default monte-carlo trial count for --trials
_def = os.environ.get("QHEOT_TRIALS")
DEFAULT_TRIALS = max(1, int(_def)) if (_def and _def.isdigit()) else 10000

# per-request caps for the api; the cli runs batch jobs and is not capped
_def = os.environ.get("QHEOT_API_MAX_POINTS")
API_MAX_POINTS = max(2, int(_def)) if (_def and _def.isdigit()) else 1001
_def = os.environ.get("QHEOT_API_MAX_RANDOM_INPUTS")
API_MAX_RANDOM_INPUTS = int(_def) if (_def and _def.isdigit()) else 256

# numeric tolerances
HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-10
TRACE_TOL = 1e-10
NORM_TOL = 1e-10
CPTP_TOL = 1e-9
PROB_CLIP_TOL = 1e-9
PINV_CUTOFF = 1e-12
RANK_CUTOFF = 1e-12
THEOREM_TOL = 1e-6
CHOI_TOL = 1e-9

# eigenvalues at or below this are rounding noise for sqrt and other positive powers
EIG_FLOOR = 1e-14

# cyclic jacobi stopping rule
JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100

# output contract
SCHEMA_VERSION = "1"
SIGNIFICANT_DIGITS = 12


def get_default_seed():
    return DEFAULT_SEED


def get_output_path(name):
    """Resolve an --out value: absolute paths pass through, bare names go under OUTPUT_DIR."""
    if os.path.isabs(name) or os.path.dirname(name):
        return name
    return os.path.join(OUTPUT_DIR, name)
