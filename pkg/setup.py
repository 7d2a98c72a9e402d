"""Build hook for the optional compiled bitset kernels.

The package is pure Python apart from oqlkit._kernels._bitops, which is a
Cython translation of oqlkit._kernels/pure.py.  If Cython or a C compiler is
unavailable the build still succeeds and the package falls back to the pure
kernels at import time.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "oqlkit._kernels._bitops",
                ["src/oqlkit/_kernels/_bitops.pyx"],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
