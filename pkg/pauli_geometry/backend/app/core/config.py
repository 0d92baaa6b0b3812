from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # predicate tolerances
    PREDICATE_TOL: float = 1e-12
    ZERO_SNAP: float = 1e-14
    BOUNDARY_TOL: float = 1e-10
    STATE_TOL: float = 1e-12
    PSD_TOL: float = 1e-10

    # monte carlo
    MC_DEFAULT_SAMPLES: int = 1_000_000
    MC_DEFAULT_SEED: int = 0
    MC_BATCH_SIZE: int = 65_536
    MC_WORKERS: int = 4

    # quadrature for time-dependent rates
    QUAD_TOL: float = 1e-10
    QUAD_LIMIT: int = 200

    LOG_LEVEL: str = "WARNING"
    LOG_JSON: bool = True

    API_HOST: str = "0.0.0.0"
    API_PORT: int = 8000
    ALLOWED_ORIGINS: str = "*"

    model_config = SettingsConfigDict(env_prefix="PAULI_", extra="ignore")


settings = Settings()
