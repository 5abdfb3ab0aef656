"""
Synthetic density catalog endpoint.
"""

from fastapi import APIRouter

from wavediv.estimation.synthetic import catalog
from wavediv.schemas.requests import CatalogEntry, CatalogResponse

router = APIRouter(tags=["catalog"])


@router.get("/catalog", response_model=CatalogResponse, summary="List Synthetic Densities")
def list_densities():
    """
    List the closed-form densities usable as known sides and in experiment configs.

    **Returns:**
    - Catalog ids with their closed forms and density bounds on [0, 1]
    """
    return CatalogResponse(
        densities=[
            CatalogEntry(id=d.id, description=d.description, kappa1=d.kappa1, kappa2=d.kappa2)
            for d in catalog()
        ]
    )
