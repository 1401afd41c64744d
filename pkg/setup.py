"""Build script for the optional compiled counting kernel.

A plain install works without a compiler: the package falls back to the
vectorized numpy kernel at import time.  Set BIPHOTON_NO_EXTENSION=1 to skip
the extension on purpose, or rebuild it in place with

    python setup.py build_ext --inplace
"""

import os

from setuptools import setup


def _extensions():
    if os.environ.get("BIPHOTON_NO_EXTENSION"):
        return []
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        return []
    ext = Extension(
        "biphoton._kernels._sweep_cy",
        sources=["src/biphoton/_kernels/_sweep_cy.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        # -ffp-contract=off: no FMA contraction, so the float arithmetic matches
        # the numpy fallback operation for operation (counts must be identical).
        extra_compile_args=["-O3", "-ffp-contract=off"],
    )
    return cythonize(
        [ext],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )


setup(ext_modules=_extensions())
