"""Build the optional compiled overlay kernels.

The package works without them: a pure-Python implementation is selected at
import time when the extension is missing. Set TOEPLIMIT_NO_EXT=1 to skip
the build.
"""
import os
import sys

from setuptools import setup

ext_modules = []
if os.environ.get("TOEPLIMIT_NO_EXT", "") not in ("1", "true", "yes"):
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension

        args = [] if sys.platform == "win32" else ["-O3", "-ffp-contract=off"]
        ext_modules = cythonize(
            [Extension("toeplimit.geometry._clipcore",
                       ["src/toeplimit/geometry/_clipcore.pyx"],
                       include_dirs=[np.get_include()],
                       define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                       extra_compile_args=args,
                       language="c++")],
            compiler_directives={"language_level": "3"},
        )
    except ImportError as exc:  # Cython or numpy unavailable at build time
        print(f"toeplimit: building without compiled kernels ({exc})", file=sys.stderr)

setup(ext_modules=ext_modules)
