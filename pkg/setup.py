"""Build hook for the optional compiled extension.

The package is pure Python and fully functional without compilation.
When Cython and a C compiler are available, the packed-check inner loop
is built as an extension module; any failure along the way falls back
to a pure-Python install with a warning instead of aborting.
"""

from __future__ import annotations

import warnings

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """build_ext that degrades to a pure install on compiler errors."""

    def run(self) -> None:
        try:
            super().run()
        except Exception as exc:
            warnings.warn(f"compiled extension skipped: {exc}")

    def build_extension(self, ext) -> None:
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"compiled extension skipped: {exc}")


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(["src/hopfkit/_kernels.pyx"], language_level=3)


setup(ext_modules=_extensions(), cmdclass={"build_ext": OptionalBuildExt})
