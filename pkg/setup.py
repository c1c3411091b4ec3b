"""Build script: compiles the optional straightening kernel.

The package works without the extension (a numpy/scipy fallback is selected
at import time), so a failed compilation only costs speed, not correctness.
"""

import os
import sys

from setuptools import Extension, setup


def extensions():
    pyx = os.path.join(os.path.dirname(os.path.abspath(__file__)),
                       "src", "rla", "_speedups.pyx")
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("rla: Cython not available, installing without compiled kernel",
              file=sys.stderr)
        return []
    if not os.path.exists(pyx):
        return []
    ext = Extension(
        "rla._speedups",
        ["src/rla/_speedups.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


setup(ext_modules=extensions())
