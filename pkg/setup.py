import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

# The compiled kernel is an optional accelerator; lineaut._backend falls back
# to the pure-Python twin when the extension is absent.
extensions = []
if cythonize is not None and not os.environ.get("LINEAUT_NO_EXTENSION"):
    extensions = cythonize(
        [Extension("lineaut._kernel", ["src/lineaut/_kernel.pyx"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=extensions)
