from .base import HoodhashSettings, load_settings

settings = load_settings()

__all__ = ["HoodhashSettings", "load_settings", "settings"]
