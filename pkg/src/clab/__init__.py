"""Coalescence of canonical coordinates in small quantum cohomology of Grassmannians."""
