"""Build hook for the optional compiled search kernel.

Metadata lives in pyproject.toml.  Without Cython (or a C compiler) the
package installs without the extension and uses the pure-Python kernel.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("thrackle.search._kernel", ["src/thrackle/search/_kernel.pyx"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
