"""Combining the two models' outputs through the primary toolkit.

The divide blend itself lives in the primary component; this module only
matches output files by stem and shells out to ``linehint combine`` per
pair, so there is exactly one implementation of the pixel math.
"""

import logging
import shutil
import subprocess
import sys
from pathlib import Path

from .runner import AdapterError

logger = logging.getLogger("ganadapter")


def _primary_cli() -> list[str]:
    exe = shutil.which("linehint")
    if exe:
        return [exe]
    return [sys.executable, "-m", "linehint.cli"]


def combine_pair(numerator_png, denominator_png, out_png) -> Path:
    """Divide-blend one pair via the primary CLI."""
    out_png = Path(out_png)
    out_png.parent.mkdir(parents=True, exist_ok=True)
    command = [*_primary_cli(), "combine", str(numerator_png), str(denominator_png), str(out_png)]
    proc = subprocess.run(command, capture_output=True, text=True)
    if proc.returncode != 0:
        raise AdapterError(
            f"primary combine failed ({proc.returncode}): {proc.stderr.strip()}"
        )
    return out_png


def collect_and_combine(aligned_out_dir, unpaired_out_dir, out_dir) -> list[Path]:
    """Combine matching stems from both output directories.

    Unmatched stems are reported with a warning and skipped; matched ones
    are always processed. Returns the written paths in stem order.
    """
    aligned_out_dir = Path(aligned_out_dir)
    unpaired_out_dir = Path(unpaired_out_dir)
    out_dir = Path(out_dir)
    aligned = {p.stem: p for p in aligned_out_dir.glob("*.png")}
    unpaired = {p.stem: p for p in unpaired_out_dir.glob("*.png")}
    if not aligned and not unpaired:
        raise AdapterError(
            f"no PNG outputs found in {aligned_out_dir} or {unpaired_out_dir}"
        )
    for stem in sorted(set(aligned) ^ set(unpaired)):
        side = aligned_out_dir if stem in aligned else unpaired_out_dir
        logger.warning("unmatched output %s.png (only in %s); skipping", stem, side)
    written = []
    for stem in sorted(set(aligned) & set(unpaired)):
        written.append(combine_pair(aligned[stem], unpaired[stem], out_dir / f"{stem}.png"))
    return written
