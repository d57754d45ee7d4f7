"""Build script: compiles the optional native kernels.

The package works without the extension (a numpy/bigint fallback is selected at
import time), so a missing compiler or Cython only costs speed, not functionality.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "bernpairs._kernels._native",
                ["src/bernpairs/_kernels/_native.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
