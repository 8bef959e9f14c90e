"""Build script for the optional compiled simplex kernel.

The package works without the extension (a numpy fallback is selected at
import time); building it just makes the LP pivot loop faster.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "circtheta._simplex_cy",
                ["src/circtheta/_simplex_cy.pyx"],
                include_dirs=[np.get_include()],
                # -ffp-contract=off keeps the kernel bit-compatible with the
                # numpy fallback (no FMA contraction of a*b - c).
                extra_compile_args=["-O3", "-ffp-contract=off"],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
