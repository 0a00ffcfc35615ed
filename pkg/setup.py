import os

from setuptools import setup

# The compiled kernels are an optional speedup: spatialcs._kernels falls back
# to the pure-Python twin when the extension is absent. Set SPATIALCS_NO_EXT=1
# to skip compilation entirely.
ext_modules = []
if os.environ.get("SPATIALCS_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "spatialcs._kernels._fastcore",
                    ["src/spatialcs/_kernels/_fastcore.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
