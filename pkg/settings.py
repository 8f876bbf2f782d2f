import os
from dotenv import load_dotenv

# Load environment variables from .env file
load_dotenv()

# Automata up to this many states get dense 256-entry transition rows.
DENSE_GOTO_MAX_STATES = int(os.getenv("GAPMATCH_DENSE_GOTO_MAX_STATES", "4096"))

# Largest beta* - alpha* the threshold engine builds active-window arrays for.
MAX_WINDOW_SPAN = int(os.getenv("GAPMATCH_MAX_WINDOW_SPAN", "4096"))

LOG_LEVEL = os.getenv("GAPMATCH_LOG_LEVEL", "WARNING").upper()

BENCH_WORKERS = int(os.getenv("GAPMATCH_BENCH_WORKERS", "4"))

if DENSE_GOTO_MAX_STATES < 0 or MAX_WINDOW_SPAN < 0:
    raise ValueError("GAPMATCH_DENSE_GOTO_MAX_STATES and GAPMATCH_MAX_WINDOW_SPAN must be non-negative.")
