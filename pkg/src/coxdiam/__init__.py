"""Reduced-word graphs of classical Weyl groups, their diameters and the
rank-two subsystem lower bounds."""

from ._backend import BACKEND
from .graph import WordGraph, build_graph, diameter
from .l2 import l2_size, rank_two_subsystems_of, separation
from .roots import CoxeterType, GroupElement, Root, longest_element
from .words import ReducedWord, count_reduced_words, enumerate_reduced_words

__version__ = "0.1.0"
