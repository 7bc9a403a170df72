from .instances import InstanceGenerator
from .registry import CHECK_IDS, run_registry

__all__ = ["InstanceGenerator", "CHECK_IDS", "run_registry"]
