from .env import __version__  # noqa
