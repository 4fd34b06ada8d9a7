import os

from setuptools import setup

# The compiled search kernel is optional: without Cython (or with
# RATSIMPLEX_PURE set) the package falls back to the pure-Python twin.
ext_modules = []
if not os.environ.get("RATSIMPLEX_PURE"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/ratsimplex/_speedups.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
