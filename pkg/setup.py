"""Build script: compiles the execution kernels when Cython is available.

The package works without the extension (a pure-Python fallback with the
same contract is selected at import time), so a failed compile is not
fatal to installation.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/pga_hoare/_kernels.pyx"],
        compiler_directives={"language_level": "3"},
    )
    for ext in ext_modules:
        ext.extra_compile_args = ["-O3"]
except ImportError:
    pass

setup(ext_modules=ext_modules)
