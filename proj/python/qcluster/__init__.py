from ._qcluster import *  # noqa: F401,F403
