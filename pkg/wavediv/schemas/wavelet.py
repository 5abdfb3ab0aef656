"""
Wavelet family identifiers.

This module defines the supported father-wavelet families and the parser
that accepts the spellings used on the command line and in configs.
"""

from enum import Enum

from wavediv.core.exceptions import UnsupportedFamily
from wavediv.core.utils import normalize_identifier


class WaveletFamily(str, Enum):
    """Enum for supported scaling-function families."""
    HAAR = "haar"
    DAUBECHIES2 = "daubechies2"
    DAUBECHIES3 = "daubechies3"
    DAUBECHIES4 = "daubechies4"
    DAUBECHIES5 = "daubechies5"
    DAUBECHIES6 = "daubechies6"
    DAUBECHIES7 = "daubechies7"
    DAUBECHIES8 = "daubechies8"
    DAUBECHIES9 = "daubechies9"
    DAUBECHIES10 = "daubechies10"

    @property
    def order(self) -> int:
        """Number of vanishing moments N (1 for Haar)."""
        if self is WaveletFamily.HAAR:
            return 1
        return int(self.value.removeprefix("daubechies"))


def parse_family(name: "str | WaveletFamily") -> WaveletFamily:
    """
    Parse a family name such as "haar", "Daubechies 4", "db4" or "daubechies4".

    Raises:
        UnsupportedFamily: If the name does not denote a supported family
    """
    if isinstance(name, WaveletFamily):
        return name
    key = normalize_identifier(str(name))
    if key in ("haar", "db1", "daubechies1"):
        return WaveletFamily.HAAR
    if key.startswith("db"):
        key = "daubechies" + key[2:]
    try:
        return WaveletFamily(key)
    except ValueError:
        raise UnsupportedFamily(f"unsupported wavelet family {name!r}")
