"""Ehresmann Lab: executable left Ehresmann monoid constructions."""

__version__ = "0.1.0"
