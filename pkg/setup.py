"""Build script: compiles the optional fast kernel extension.

If Cython or a C compiler is unavailable the build degrades to the pure
numpy backend; the package selects a backend at import time.
"""

import sys

from setuptools import setup

try:
    import numpy
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    extensions = cythonize(
        [
            Extension(
                "subaction._kernels._fastcore",
                ["src/subaction/_kernels/_fastcore.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # noqa: BLE001
    print(f"fast kernel extension skipped: {exc}", file=sys.stderr)
    extensions = []

setup(ext_modules=extensions)
