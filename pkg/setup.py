"""Build hook for the optional compiled grid kernel.

The package is pure Python apart from freeqsg._gridcore; when Cython or a
C compiler is unavailable the extension is skipped and the numpy fallback
is used at runtime.
"""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    ext_modules = cythonize(
        [
            Extension(
                "freeqsg._gridcore",
                ["src/freeqsg/_gridcore.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
