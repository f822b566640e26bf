"""Build script for the optional compiled sweep kernel.

The package is pure Python plus one Cython extension; if Cython or a C
compiler is unavailable the install still succeeds and the pure-numpy
kernel is used at runtime.
"""

import os

from setuptools import Extension, setup

ext_modules = []
pyx = os.path.join("src", "chorodisk", "_sweep.pyx")
if os.path.exists(pyx):
    try:
        import numpy as np
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "chorodisk._sweep",
                    [pyx],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3", "-ffp-contract=off"],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
