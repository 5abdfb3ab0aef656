import uvicorn
from fastapi import FastAPI

from wavediv.core.init_settings import global_settings
from wavediv.core.lifespan import lifespan
from wavediv.core.routers import setup_routers

# Initiate a FastAPI App.
app = FastAPI(
    title=global_settings.APP_NAME,
    version=global_settings.APP_VERSION,
    lifespan=lifespan,
)

# Setup Routers
setup_routers(app)

if __name__ == "__main__":
    uvicorn.run(
        app="wavediv.main:app",
        host=global_settings.HOST,
        port=global_settings.PORT,
    )
