"""Rank-metric codes and scattered q-systems over finite fields."""

__version__ = "0.1.0"
