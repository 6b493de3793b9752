"""Build hook for the optional compiled kernel twin.

The package is pure Python plus one Cython extension mirroring
``pftrim._poly_core``.  When Cython or a C toolchain is missing the
extension is skipped and the install falls back to the pure kernels.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:
            self._skip(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._skip(exc)

    @staticmethod
    def _skip(exc):
        print(f"compiled kernels skipped ({exc}); using the pure fallback")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [Extension("pftrim._poly_core_c", ["src/pftrim/_poly_core_c.pyx"])],
        language_level=3)


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
