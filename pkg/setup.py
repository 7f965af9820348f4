"""Build script: compiles the optional elimination kernels.

The package is pure Python; ``periodica._kernels`` is a Cython twin of
``periodica._kernels_py`` that speeds up row reduction over GF(p) and the
integer core used for rational elimination.  If Cython or a C compiler is
missing, the build silently degrades and the pure fallback is used at import
time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "periodica._kernels",
                ["src/periodica/_kernels.pyx"],
                extra_compile_args=["-O2"],
            )
        ],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
        },
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
