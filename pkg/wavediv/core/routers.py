from fastapi import FastAPI

from wavediv.api.v1.endpoints import base, catalog, estimate


def setup_routers(app: FastAPI):
    # Main route
    app.include_router(base.router, prefix="", tags=["main"])

    # API v1 routes
    app.include_router(catalog.router, prefix="/api/v1", tags=["catalog"])
    app.include_router(estimate.router, prefix="/api/v1", tags=["estimation"])
