"""Orchestration over an external image-to-image translation framework.

Writes training configurations, launches training and inference through
the framework's command-line surface, and hands matched generator
outputs to the primary toolkit's ``combine`` command. All pixel math
stays in the primary component; this package only moves files and
processes around.
"""

from .combine import collect_and_combine
from .runner import AdapterError, CheckpointNotFoundError, framework_dir, infer, train
from .spec import TrainSpec, write_config

__version__ = "0.1.0"

__all__ = [
    "AdapterError",
    "CheckpointNotFoundError",
    "TrainSpec",
    "collect_and_combine",
    "framework_dir",
    "infer",
    "train",
    "write_config",
]
