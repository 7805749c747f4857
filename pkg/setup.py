"""Build shim: compiles the optional fast accumulator extension.

The package works without the extension (pure-Python fallback); set
GAMMAFILT_SKIP_EXT=1 to skip compilation entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("GAMMAFILT_SKIP_EXT") != "1":
    try:
        import numpy
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "gammafilt._accum",
                    ["src/gammafilt/_accum.pyx"],
                    include_dirs=[numpy.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            language_level="3",
        )
    except ImportError:
        # no Cython/numpy at build time: install pure-Python only
        ext_modules = []

setup(ext_modules=ext_modules)
