import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext = Extension(
        "chebjac._kernels_cy",
        ["src/chebjac/_kernels_cy.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3"],
    )
    # the package falls back to the numpy kernels if the build is unavailable
    ext.optional = True
    ext_modules = cythonize([ext], language_level="3")

setup(ext_modules=ext_modules)
