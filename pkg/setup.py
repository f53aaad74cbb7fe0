"""Build hook for the optional compiled polynomial kernel.

Metadata lives in pyproject.toml.  If Cython or a C++ compiler is missing
the package still installs and runs on the pure-Python kernel.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("ospcheck.arith._ckernel", ["src/ospcheck/arith/_ckernel.pyx"],
                   language="c++", extra_compile_args=["-O3"])],
        compiler_directives={"language_level": 3},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
