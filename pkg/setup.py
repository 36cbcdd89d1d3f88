"""Build script for the optional compiled kernels.

The package works without them (a pure-Python fallback is selected at
import time), so a failed compile only emits a warning.
"""
import warnings

from setuptools import setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "sortnet._ckernels",
                ["src/sortnet/_ckernels.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": 3},
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    warnings.warn(f"compiled kernels disabled: {exc}")

setup(ext_modules=ext_modules)
