"""Exact spectra of noninversion shuffling operators on symmetric groups and
rank-one operators on reflection arrangements."""

__version__ = "0.1.0"
