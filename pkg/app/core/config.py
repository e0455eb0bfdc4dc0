import os
from dotenv import load_dotenv

load_dotenv()


class Settings:
    # Project
    PROJECT_NAME: str = "KR-Torus"
    VERSION: str = "1.0.0"

    # Logging
    LOG_LEVEL: str = os.getenv("KRT_LOG_LEVEL", "INFO").upper()

    # Grid caps (keep SNF sizes around 60 per side)
    MIN_N: int = 2
    MAX_N: int = int(os.getenv("KRT_MAX_N", "8"))
    MAX_M: int = int(os.getenv("KRT_MAX_M", "8"))
    MIN_M: int = -MAX_M

    # Output
    DEFAULT_FORMAT: str = "table"
    OUTPUT_DIR: str = os.getenv("KRT_OUTPUT_DIR", "outputs")

    # Grid evaluation; 1 keeps everything in-process
    GRID_WORKERS: int = int(os.getenv("KRT_GRID_WORKERS", "1"))

    # Sign of the pushforward relative to the plain adjoint of the pullback.
    PUSHFORWARD_SIGN: int = 1

    # N used by `table` when --n is omitted
    DEFAULT_TABLE_N: int = 2


settings = Settings()
