from .session import Session, SessionConfig, SessionDriver, TelemetryHub  # noqa: F401
