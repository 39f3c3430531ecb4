""" Main Package Init

MONCE evaluation for long-term, non-contiguous multi-object tracking.
"""

__version__ = "1.0.0"
