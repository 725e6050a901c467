"""Optional Cython build of the quadrature kernels.

The package works without a compiler: ``ksurf.kernels`` falls back to the
pure-Python implementation when the extension is missing.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        ["src/ksurf/_kernels.pyx"],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )
    for ext in ext_modules:
        ext.optional = True

setup(ext_modules=ext_modules)
