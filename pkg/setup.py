import os

from setuptools import Extension, setup

# The compiled kernels are optional: the package falls back to the pure
# Python bitset backend when the extension is absent (SUMPROD_PURE_ONLY=1
# skips the build entirely).
ext_modules = []
if os.environ.get("SUMPROD_PURE_ONLY") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "sumprod._kernels._fastbits",
                    ["src/sumprod/_kernels/_fastbits.pyx"],
                )
            ],
            language_level=3,
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
