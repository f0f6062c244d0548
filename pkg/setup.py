import os

from setuptools import setup

ext_modules = []
if not os.environ.get("BIGPOLY_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/bigpoly/_speedups.pyx"],
            language_level=3,
        )
    except ImportError:
        # No Cython: the pure-Python kernels are used instead.
        ext_modules = []

setup(
    package_dir={"": "src"},
    ext_modules=ext_modules,
)
