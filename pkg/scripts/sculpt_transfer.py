"""
Entry point for the transfer simulations.

Usage:
    python scripts/sculpt_transfer.py three-level-run --config configs/three_level.json --out results/three_level
"""

import sys
from pathlib import Path

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.cli import main


if __name__ == "__main__":
    sys.exit(main())
