"""Build script: compiles the optional Cython core.

The package runs fine without the extension (a pure-Python twin of every
kernel ships in sawlen._corepy); any failure here degrades to that fallback
instead of breaking the install.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build extensions, but never let a compiler problem fail the install."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # missing compiler, broken toolchain, ...
            print(f"warning: compiled core skipped ({exc!r}); "
                  "using pure-Python kernels")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: building {ext.name} failed ({exc!r}); "
                  "using pure-Python kernels")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("warning: Cython not available; using pure-Python kernels")
        return []
    ext = Extension("sawlen._corecy", ["src/sawlen/_corecy.pyx"])
    return cythonize([ext], language_level=3)


setup(
    ext_modules=extensions(),
    cmdclass={"build_ext": OptionalBuildExt},
)
