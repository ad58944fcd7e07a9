import os

from setuptools import Extension, setup

# The compiled scan kernel is an optional accelerator: the package falls back
# to the pure-Python implementation in monospectra._kernels._scan_py when the
# extension is unavailable.  Set MONOSPECTRA_PURE_PYTHON=1 to skip the build.
ext_modules = []
if os.environ.get("MONOSPECTRA_PURE_PYTHON") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "monospectra._kernels._scan_cy",
                    ["src/monospectra/_kernels/_scan_cy.pyx"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
