#!/usr/bin/env python3
"""
Catalog Export Script

Writes every catalog code, with its exact basis and float views, to one JSON
file per code, plus an index.json summarizing kappa, claims and exponents.

Usage:
    python scripts/export_catalog.py --out-dir catalog_export
    python scripts/export_catalog.py --out-dir catalog_export --only iter_silver golden

Environment variables:
    ITERSTBC_EXPORT_DIR - default output directory (default: catalog_export)
    ITERSTBC_SKIP_DEG3 - set to 1 to skip the 6x6 iterated codes (default: 0)
"""

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from iterstbc.catalog import export_code, list_codes, make_code
from iterstbc.errors import IterStbcError

EXPORT_DIR = os.getenv("ITERSTBC_EXPORT_DIR", "catalog_export")
SKIP_DEG3 = os.getenv("ITERSTBC_SKIP_DEG3", "0") == "1"

logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)


def export_all(out_dir: Path, names: list[str]) -> list[dict]:
    out_dir.mkdir(parents=True, exist_ok=True)
    index = []
    for name in names:
        if SKIP_DEG3 and name.startswith("iter_deg3"):
            logger.info(f"Skipping {name}")
            continue
        code = make_code(name)
        export = export_code(code)
        path = out_dir / f"{name}.json"
        path.write_text(export.model_dump_json(indent=2))
        logger.info(f"Exported {name} to {path}")
        index.append({
            "name": name,
            "kappa": code.kappa,
            "side": code.side,
            "field": code.field.name,
            "fully_diverse_claim": code.fully_diverse_claim,
            "claimed_exponent": code.claimed_exponent,
        })
    return index


def main():
    parser = argparse.ArgumentParser(description="Export the code catalog as JSON")

    parser.add_argument('--out-dir', default=EXPORT_DIR, help='Output directory')
    parser.add_argument('--only', nargs='+', choices=list_codes(), help='Export only these codes')

    args = parser.parse_args()

    out_dir = Path(args.out_dir)
    try:
        index = export_all(out_dir, args.only or list_codes())
    except (IterStbcError, OSError) as e:
        logger.error(f"Export failed: {e}")
        sys.exit(1)

    (out_dir / 'index.json').write_text(json.dumps(index, indent=2))
    logger.info(f"Export complete: {len(index)} codes in {out_dir}")


if __name__ == '__main__':
    main()
