"""Build script: compiles the optional Cython kernel core.

The package works without the extension (a pure-Python twin of the kernels
is selected at import time), so any failure here degrades gracefully.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "magnus2._backend._core",
                ["src/magnus2/_backend/_core.pyx"],
                extra_compile_args=["-O3"],
                language="c",
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
