"""Build script: compiles the optional native kernel when Cython is available.

The package is fully functional without the extension; a pure-Python
fallback is selected at import time if the compiled module is missing.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "nbgrid._kernels._native",
                ["src/nbgrid/_kernels/_native.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    print("Cython not available; installing with the pure-Python kernel only.")

setup(ext_modules=ext_modules)
