"""Python interface to the heterogeneous-diffusion toolkit."""

try:
    from ._hetdiff import *
    from ._hetdiff import __doc__, __version__
except ImportError:
    from _hetdiff import *
    from _hetdiff import __doc__, __version__
