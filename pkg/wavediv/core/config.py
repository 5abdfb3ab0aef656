import os
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # Application settings
    APP_NAME: str = "wavediv"
    APP_VERSION: str = "1.0.0"
    LOG_LEVEL: str = "INFO"

    # Wavelet defaults
    DEFAULT_WAVELET: str = "daubechies2"
    TABLE_RESOLUTION: int = 12

    # Estimation domain, shared by f and g
    DOMAIN_LO: float = 0.0
    DOMAIN_HI: float = 1.0

    # Inference
    CI_LEVEL: float = 0.95
    CLIP_FLOOR: float = 1e-4
    SIGMA_FLOOR: float = 1e-6

    # Quadrature nodes; 0 means automatic doubling from 2^12 + 1
    QUAD_NODES: int = 0
    GRID_SIZE: int = 4096

    # Worker threads for the simulation lab; 0 means all available cores
    WAVEDIV_THREADS: int = 0

    # HTTP service
    HOST: str = "127.0.0.1"
    PORT: int = 5000

    model_config = SettingsConfigDict(env_file=".env", extra='allow')

    @property
    def thread_count(self) -> int:
        if self.WAVEDIV_THREADS > 0:
            return self.WAVEDIV_THREADS
        return os.cpu_count() or 1

    @property
    def quad_nodes(self) -> int | None:
        return self.QUAD_NODES if self.QUAD_NODES > 0 else None


def get_settings() -> Settings:
    return Settings()
