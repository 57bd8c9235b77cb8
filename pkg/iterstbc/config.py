"""
Runtime configuration.

Environment variables:
    ITERSTBC_WORKERS - default worker count for scans and simulation (default: 1)
    ITERSTBC_ML_BUDGET - largest enumeration allowed for exhaustive search (default: 2**24)
    ITERSTBC_ZERO_TOL - float zero threshold where exact arithmetic is unavailable (default: 1e-9)
    ITERSTBC_LOG_LEVEL - logging level used by the CLI (default: INFO)
    ITERSTBC_EMBED_DPS - mpmath digits used for complex embeddings (default: 50)
"""

import os

WORKERS = int(os.getenv("ITERSTBC_WORKERS", "1"))
ML_BUDGET = int(os.getenv("ITERSTBC_ML_BUDGET", str(2**24)))
ZERO_TOL = float(os.getenv("ITERSTBC_ZERO_TOL", "1e-9"))
LOG_LEVEL = os.getenv("ITERSTBC_LOG_LEVEL", "INFO")
EMBED_DPS = int(os.getenv("ITERSTBC_EMBED_DPS", "50"))

# Embedding compatibility tolerance for field validation
EMBED_TOL = 1e-12
