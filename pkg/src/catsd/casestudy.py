"""Packaged example dataset: special-forces candidate selection.

Twenty candidates scored on nine criteria, four categories defined by
one reference profile each, weights elicited with the deck-of-cards
procedure, and four mutual interaction effects per category. Useful for
demos and as a fixture with published expected assignments.
"""

import os

from .bundle import LoadedProject, read_model

_DATA_DIR = os.path.join(os.path.dirname(__file__), "data", "casestudy")


def data_path() -> str:
    return _DATA_DIR


def load() -> LoadedProject:
    project = read_model(_DATA_DIR)
    if not project.ok:
        raise RuntimeError(f"packaged dataset failed to load: {project.report.to_dict()}")
    return project
