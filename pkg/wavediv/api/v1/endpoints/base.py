from fastapi import APIRouter

from wavediv.core.init_settings import global_settings

router = APIRouter()


@router.get("/")
def onboard_message():
    return {
        "message": f"{global_settings.APP_NAME} is running",
        "version": global_settings.APP_VERSION,
    }
