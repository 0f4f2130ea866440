"""English quantifiers to first-order logic with cardinality, evaluated over a finite kitchen world.

The pipeline: :mod:`quantkitchen.nlu` translates a sentence into a
:class:`~quantkitchen.logic.SentenceIR`, :mod:`quantkitchen.reasoner` evaluates
queries by witness counting over a saturated finite interpretation, and
:mod:`quantkitchen.executor` validates commands and drives the symbolic kitchen
simulator in :mod:`quantkitchen.kitchen`.
"""

__version__ = "0.1.0"
