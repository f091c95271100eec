"""Build script for the optional compiled kernel extension.

The extension is a pure speed play: ezcipher falls back to the NumPy/Python
kernels automatically when the compiled module is absent, and both backends
are required to produce bit-identical output.  -ffp-contract=off keeps the
compiler from fusing multiply-adds, which would change keystream rounding
and silently break that contract (and with it, decryption interop).
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "ezcipher._kernels",
                ["src/ezcipher/_kernels.pyx"],
                extra_compile_args=["-O2", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
