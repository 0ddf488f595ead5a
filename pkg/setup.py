"""Build script for the optional compiled kernels.

The package works without them: ``chebyramsey.kernels`` falls back to the
pure-Python implementation when the extension is missing.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("CHEBY_RAMSEY_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "chebyramsey._ckernels",
                    ["src/chebyramsey/_ckernels.pyx"],
                    language="c++",
                    extra_compile_args=["-O3", "-std=c++17"],
                )
            ],
            compiler_directives={
                "language_level": 3,
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
                "initializedcheck": False,
            },
        )

setup(ext_modules=ext_modules)
