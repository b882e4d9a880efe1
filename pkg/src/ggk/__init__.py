"""
Exact computations with g-vector fans of 2-Calabi-Yau categories, green
paths and green groupoids.

The main entry points are :func:`ggk.model.generate` and
:func:`ggk.model.load_model` for models, :mod:`ggk.fan` for chamber
decompositions, :mod:`ggk.groupoid` for green groupoids and
:mod:`ggk.forms` for the Cartan form checks.
"""

from .model import FanModel, ModelError, build_fan_model, generate, load_model, save_model

__version__ = "0.1.0"

__all__ = ["FanModel", "ModelError", "build_fan_model", "generate", "load_model", "save_model"]
