"""Rewrite the golden files.  Run only after an intentional format change."""

import sys
from pathlib import Path

here = Path(__file__).resolve().parent
sys.path.insert(0, str(here.parent))

from helpers import golden_payloads  # noqa: E402

for name, data in golden_payloads().items():
    (here / name).write_bytes(data)
    print(f"{name}: {len(data)} bytes")
