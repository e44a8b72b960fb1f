from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    # Eigensolver
    TOLERANCE: float = 1e-10
    MAX_ITERATIONS: int = 100_000
    DENSE_CUTOFF: int = 64

    # Threshold comparisons
    BOUNDARY_EPSILON: float = 1e-6

    # Exact search caps (vertex counts)
    ORACLE_CAP: int = 24
    MEMBERSHIP_CAP: int = 16
    SHARPNESS_CAP: int = 64

    # T2_11 threshold variant: "statement" uses 2/sqrt(n-2), "proof" uses 2/sqrt(n-1)
    THM211_VARIANT: str = "statement"

    # Survey workers
    THREADS: int = 1

    LOG_LEVEL: str = "WARNING"

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="SPECTRAHAM_",
        case_sensitive=True,
        extra="ignore",
    )


settings = Settings()
