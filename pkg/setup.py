# Builds the optional compiled kernel core.  The package works without it
# (pure-Python fallback selected at import); any compiler or Cython failure
# downgrades to a pure build instead of failing the install.

import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, etc.
            sys.stderr.write(f"skipping compiled kernels: {exc}\n")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            sys.stderr.write(f"skipping {ext.name}: {exc}\n")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        ["src/besselprob/_kernels_cy.pyx"],
        language_level=3,
        compiler_directives={"boundscheck": False, "cdivision": True},
    )


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": OptionalBuildExt},
)
