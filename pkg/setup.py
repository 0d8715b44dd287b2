"""Build the optional Cython kernels; the package works without them."""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("REGLAB_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "reglab._kernels._ckernels",
                    ["src/reglab/_kernels/_ckernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
