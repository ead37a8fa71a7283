from ._otrforge import *  # noqa: F401,F403
