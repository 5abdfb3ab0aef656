"""
Utility functions for identifier normalization, logging setup and file I/O.

This module provides reusable helpers for normalizing wavelet family and
catalog identifiers, reading sample files and writing result files
atomically across the CLI, the HTTP service and the simulation lab.
"""

import logging
import os
import tempfile
import unicodedata

import numpy as np
import pandas as pd

from wavediv.core.exceptions import MalformedInput


def normalize_identifier(name: str) -> str:
    """
    Normalize a family or catalog identifier by:
    1. Removing accents/diacritics
    2. Removing spaces, dashes and underscores
    3. Converting to lowercase

    Examples:
        "Daubechies 2" -> "daubechies2"
        "db-4" -> "db4"
        " BUMP " -> "bump"

    Args:
        name: Raw identifier string

    Returns:
        Normalized identifier
    """
    if not name:
        return ""

    normalized = unicodedata.normalize('NFD', name)
    without_accents = ''.join(
        char for char in normalized
        if unicodedata.category(char) != 'Mn'
    )
    for separator in (" ", "-", "_"):
        without_accents = without_accents.replace(separator, "")
    return without_accents.strip().lower()


def setup_logging(level: str = "INFO") -> None:
    """Configure root logging once for an entry point."""
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def read_sample_csv(path: str) -> np.ndarray:
    """
    Read a sample file: one floating-point value per line, no header.

    Trailing blank lines are tolerated; any other blank, non-numeric or
    non-finite line is rejected with its 1-based line number.

    Args:
        path: Path to the CSV file

    Returns:
        1-D float array of the values in file order

    Raises:
        MalformedInput: If the file is empty or a line cannot be parsed
    """
    try:
        frame = pd.read_csv(
            path,
            header=None,
            names=["value"],
            dtype=str,
            skip_blank_lines=False,
            keep_default_na=False,
        )
    except pd.errors.EmptyDataError:
        raise MalformedInput(f"{path} is empty")
    except pd.errors.ParserError as e:
        raise MalformedInput(f"{path} is not a one-column file: {e}")

    raw = frame["value"].fillna("").str.strip()
    # Drop trailing blank lines only
    last = len(raw)
    while last > 0 and raw.iloc[last - 1] == "":
        last -= 1
    raw = raw.iloc[:last]
    if raw.empty:
        raise MalformedInput(f"{path} is empty")

    values = pd.to_numeric(raw, errors="coerce").to_numpy(dtype=float)
    bad = np.flatnonzero(~np.isfinite(values))
    if bad.size:
        line = int(bad[0]) + 1
        raise MalformedInput(f"cannot parse {raw.iloc[bad[0]]!r} as a finite number", line=line)
    return values


def atomic_write_text(path: str, text: str) -> None:
    """Write text to path through a temp file in the same directory and a rename."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp_path, path)
    except BaseException:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise


def atomic_write_frame(path: str, frame: pd.DataFrame) -> None:
    """Write a DataFrame as CSV atomically with round-trip float formatting."""
    atomic_write_text(path, frame.to_csv(index=False, float_format="%.17g", lineterminator="\n"))

