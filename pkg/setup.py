"""Build script: compiles the optional native kernel extension.

The package works without the extension (a NumPy fallback is selected at
import time); building it just makes the hot loops faster and gives the
oracle a strict scalar-order compensated summation.
"""

import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

extensions = [
    Extension(
        "gale._native",
        ["src/gale/_native.pyx"],
        include_dirs=[np.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
]

setup(ext_modules=cythonize(extensions, language_level=3))
