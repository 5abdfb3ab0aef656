import logging
from contextlib import asynccontextmanager

from fastapi import FastAPI

from wavediv.core.init_settings import global_settings
from wavediv.core.utils import setup_logging
from wavediv.estimation.scaling import get_scaling_function
from wavediv.schemas.wavelet import parse_family

logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    setup_logging(global_settings.LOG_LEVEL)

    # Build the default scaling table once so the first request does not pay for it
    family = parse_family(global_settings.DEFAULT_WAVELET)
    get_scaling_function(family, global_settings.TABLE_RESOLUTION)
    logger.info(
        f"{global_settings.APP_NAME} {global_settings.APP_VERSION} ready "
        f"({family.value}, table resolution {global_settings.TABLE_RESOLUTION})"
    )

    yield
