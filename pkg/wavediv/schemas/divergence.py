"""
Divergence kind and parameter schemas.

A DivergenceSpec names one of the five supported functionals and, for the
Hellinger-integral family, its order alpha.
"""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from wavediv.core.exceptions import InvalidAlpha


class DivergenceKind(str, Enum):
    """Enum for supported divergence functionals."""
    HELLINGER = "hellinger"
    TSALLIS = "tsallis"
    RENYI = "renyi"
    KULLBACK_LEIBLER = "kl"
    L2 = "l2"

    @property
    def uses_alpha(self) -> bool:
        return self in (DivergenceKind.HELLINGER, DivergenceKind.TSALLIS, DivergenceKind.RENYI)


def validate_alpha(kind: DivergenceKind, alpha: Optional[float]) -> None:
    """
    Check the order alpha for the Hellinger-integral family.

    Raises:
        InvalidAlpha: If alpha is missing, not positive, or equal to 1
    """
    if not kind.uses_alpha:
        return
    if alpha is None:
        raise InvalidAlpha(f"{kind.value} requires alpha")
    if not alpha > 0:
        raise InvalidAlpha(f"alpha must be > 0, got {alpha}")
    if alpha == 1:
        raise InvalidAlpha(f"{kind.value} is indexed by alpha != 1")


class DivergenceSpec(BaseModel):
    """Which divergence to compute, plus its order where applicable."""

    kind: DivergenceKind = Field(
        ...,
        description="Divergence functional"
    )

    alpha: Optional[float] = Field(
        None,
        description="Order alpha (> 0, != 1) for hellinger/tsallis/renyi; ignored otherwise"
    )

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {"kind": "tsallis", "alpha": 2.0}
        }
    )

    @model_validator(mode="after")
    def check_alpha(self) -> "DivergenceSpec":
        validate_alpha(self.kind, self.alpha)
        return self

    @property
    def needs_clipping(self) -> bool:
        """Log and power transforms need a positive floor; L2 does not."""
        return self.kind is not DivergenceKind.L2

    @property
    def null_value(self) -> float:
        """Value of the functional when both densities coincide."""
        return 1.0 if self.kind is DivergenceKind.HELLINGER else 0.0

    @property
    def label(self) -> str:
        if self.kind.uses_alpha:
            return f"{self.kind.value}(alpha={self.alpha:g})"
        return self.kind.value
