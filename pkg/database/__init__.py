"""Bundled data files and their repository layer."""
