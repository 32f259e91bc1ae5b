from setuptools import Extension, setup
from Cython.Build import cythonize

# The compiled kernels are an optional speedup: the package falls back to the
# pure-Python implementations in qwave._kernels_py if the build fails.
ext_modules = cythonize(
    [
        Extension(
            "qwave._kernels",
            ["src/qwave/_kernels.pyx"],
            optional=True,
        )
    ],
    language_level=3,
)

setup(ext_modules=ext_modules)
