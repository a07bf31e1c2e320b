"""Builds the optional compiled solver core.

The package works without it (solver.py falls back to the pure-Python
implementation), so any failure here downgrades to a plain build."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(["src/mpltl/_cdcl.pyx"], language_level=3)
except Exception:
    pass

setup(ext_modules=ext_modules)
