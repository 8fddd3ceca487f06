"""Builds the optional compiled likelihood kernels.

The package works without the extension (a numpy fallback is selected at
import); building it just makes the fitting loops much faster.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "claimsplice._kernels._fastkern",
                sources=["src/claimsplice/_kernels/_fastkern.pyx"],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
