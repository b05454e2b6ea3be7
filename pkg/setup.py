import os

from setuptools import Extension, setup

# The compiled kernels are an optimisation, not a requirement: the package
# falls back to pure-Python kernels at import time. BCCTRUST_PURE=1 skips
# the extension build entirely.
ext_modules = []
if os.environ.get("BCCTRUST_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "bcctrust.kernels._ckernels",
                    ["src/bcctrust/kernels/_ckernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
