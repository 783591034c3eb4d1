"""Build script: compiles the optional Cython kernels.

If Cython or a C compiler is unavailable the build degrades gracefully and
the package runs on the pure-Python kernels in compsigns._kernels_py.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext

EXT_NAME = "compsigns._kernels"


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing or broken
            self._skip(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._skip(exc)

    @staticmethod
    def _skip(exc):
        print(f"WARNING: building {EXT_NAME} failed ({exc}); "
              "falling back to the pure-Python kernels.")


try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension(EXT_NAME, ["src/compsigns/_kernels.pyx"])],
        language_level="3",
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions, cmdclass={"build_ext": optional_build_ext})
