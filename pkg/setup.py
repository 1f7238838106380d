"""Build script.

The assembly hot loops have a Cython implementation in
src/poromorph/_kernels/_core.pyx.  Building it is optional: if Cython or a
C compiler is unavailable the package falls back to the pure NumPy kernels
at import time, so the extension failing to build must not fail the install.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "poromorph._kernels._core",
                ["src/poromorph/_kernels/_core.pyx"],
                include_dirs=[np.get_include()],
                # contraction off keeps results bitwise equal to the
                # pure-Python backend
                extra_compile_args=["-O3", "-ffp-contract=off"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception:
    ext_modules = []

setup(ext_modules=ext_modules)
