"""Figure scripts for repmarket experiment artifacts.

One console script per figure family; all consume only the CSV/JSON files
written by the ``repmarket`` CLI and never recompute model quantities.
"""

__version__ = "0.1.0"
