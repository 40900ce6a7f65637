from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="LIEWIDE_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    LOG_LEVEL: str = "INFO"

    # Module construction
    CAP: int = 2000

    # Verification grids
    GRID_MAX_DIM: int = 300
    ENUM_BOUND: int = 18
    JOBS: int = 1

    # Largest Weyl group enumerated element by element
    WEYL_GROUP_LIMIT: int = 100_000


settings = Settings()
