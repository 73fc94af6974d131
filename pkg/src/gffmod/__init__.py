"""Modular flow, modular conjugation and wedge duality for generalized free fields."""

from __future__ import annotations

__version__ = "0.1.0"

from gffmod.model import Component, FieldModel, ModelError, load_model, model_from_dict
from gffmod.parser import ParseError, parse
from gffmod.poly import Polynomial, evaluate, is_constant_on_shell, is_even, render
from gffmod.shell import ShellForm, to_shell_form

__all__ = [
    "__version__",
    "Component",
    "FieldModel",
    "ModelError",
    "load_model",
    "model_from_dict",
    "ParseError",
    "parse",
    "Polynomial",
    "evaluate",
    "is_constant_on_shell",
    "is_even",
    "render",
    "ShellForm",
    "to_shell_form",
]
