"""Build script.

The compiled kernel is optional: if Cython (or a C toolchain) is missing the
install proceeds and the package falls back to the pure-Python kernel at
import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "tiedlinks._kernel_c",
                sources=["src/tiedlinks/_kernel_c.pyx"],
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
