"""Cohomology rings of torus biquotients, Hard Lefschetz tests and the
moment image of the Eschenburg flag."""

__version__ = "0.1.0"
