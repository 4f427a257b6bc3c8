"""Optional Cython build of the elimination kernels.

The package works without the extension; ``qgroupoid.linalg`` falls back to
``_kernels_py`` when ``_kernels`` cannot be imported.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("QGROUPOID_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            ["src/qgroupoid/_kernels.pyx"],
            compiler_directives={"language_level": "3"},
            quiet=True,
        )

setup(ext_modules=ext_modules)
