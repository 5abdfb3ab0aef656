"""
Estimation API endpoints.

This module provides FastAPI endpoints for fitting wavelet density
estimates, estimating divergences with confidence intervals, and running the
divergence goodness-of-fit test.
"""

import logging

from fastapi import APIRouter, HTTPException, status

from wavediv.core.exceptions import WaveDivError
from wavediv.core.init_settings import global_settings
from wavediv.estimation.density import evaluate_on_grid, fit_density
from wavediv.estimation.pipeline import estimate_report
from wavediv.estimation.scaling import get_scaling_function
from wavediv.estimation.synthetic import get_density
from wavediv.schemas.density import GridSpec
from wavediv.schemas.report import EstimateReport
from wavediv.schemas.requests import DivergenceRequest, FitRequest, FitResponse

logger = logging.getLogger(__name__)

router = APIRouter(tags=["estimation"])


def _estimate(request: DivergenceRequest, null_value) -> EstimateReport:
    scaling = get_scaling_function(request.wavelet, global_settings.TABLE_RESOLUTION)
    return estimate_report(
        request.spec,
        scaling,
        sample_f=request.sample_f,
        known_f=get_density(request.known_f).pdf if request.known_f else None,
        sample_g=request.sample_g,
        known_g=get_density(request.known_g).pdf if request.known_g else None,
        domain=request.domain,
        ci_level=request.ci_level,
        null_value=null_value,
        clip_floor=global_settings.CLIP_FLOOR,
        sigma_floor=global_settings.SIGMA_FLOOR,
        quad_points=request.quad_points,
    )


@router.post("/fit", response_model=FitResponse, summary="Fit Wavelet Density Estimate")
def fit(request: FitRequest):
    """
    Fit the linear wavelet estimator and evaluate it on a uniform grid.

    **Parameters:**
    - **sample**: Observations inside the domain
    - **wavelet**: haar or daubechies2..daubechies10
    - **domain**: Closed domain [lo, hi]
    - **grid_size**: Number of evaluation points

    **Returns:**
    - Grid, values and the fit summary (n, j_n, wavelet, mass)

    **Errors:**
    - **422**: Validation errors or values outside the domain
    """
    try:
        scaling = get_scaling_function(request.wavelet, global_settings.TABLE_RESOLUTION)
        est = fit_density(request.sample, scaling, request.domain, global_settings.CLIP_FLOOR)
        grid = GridSpec(lo=request.domain[0], hi=request.domain[1], size=request.grid_size)
        values = evaluate_on_grid(est, grid)
        return FitResponse(
            summary=est.summary(grid.size),
            x=grid.points().tolist(),
            values=values.tolist(),
        )
    except HTTPException:
        raise
    except WaveDivError as e:
        raise HTTPException(status_code=e.status_code, detail=str(e))
    except Exception as e:
        logger.exception("Fit failed")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"Failed to fit density: {str(e)}"
        )


@router.post("/divergence", response_model=EstimateReport, summary="Estimate Divergence")
def divergence(request: DivergenceRequest):
    """
    Plug-in divergence estimate with plug-in standard error and confidence interval.

    **Parameters:**
    - **spec**: Divergence kind and alpha
    - **sample_f / known_f**: Sample or catalog id for f
    - **sample_g / known_g**: Sample or catalog id for g
    - **null_value**: Optional value to test against

    **Errors:**
    - **404**: Unknown catalog id
    - **409**: Two samples of different sizes
    - **422**: Validation errors
    """
    try:
        return _estimate(request, request.null_value)
    except HTTPException:
        raise
    except WaveDivError as e:
        raise HTTPException(status_code=e.status_code, detail=str(e))
    except Exception as e:
        logger.exception("Divergence estimation failed")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"Failed to estimate divergence: {str(e)}"
        )


@router.post("/gof-test", response_model=EstimateReport, summary="Divergence Goodness-of-Fit Test")
def gof_test(request: DivergenceRequest):
    """
    Test H0: f = g with the standardized divergence estimate.

    The null value defaults to the divergence at f = g (1 for the Hellinger
    integral, 0 otherwise). The decision is left to the caller.
    """
    try:
        null_value = request.spec.null_value if request.null_value is None else request.null_value
        return _estimate(request, null_value)
    except HTTPException:
        raise
    except WaveDivError as e:
        raise HTTPException(status_code=e.status_code, detail=str(e))
    except Exception as e:
        logger.exception("Goodness-of-fit test failed")
        raise HTTPException(
            status_code=status.HTTP_500_INTERNAL_SERVER_ERROR,
            detail=f"Failed to run test: {str(e)}"
        )
