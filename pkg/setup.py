import numpy
from setuptools import Extension, setup
from Cython.Build import cythonize

ext = Extension(
    "bciwheel.wavelets._fbkern",
    ["src/bciwheel/wavelets/_fbkern.pyx"],
    include_dirs=[numpy.get_include()],
    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
)
# optional: the package falls back to the numpy kernels when the compiled
# module is missing
ext.optional = True

setup(ext_modules=cythonize([ext], language_level="3"))
