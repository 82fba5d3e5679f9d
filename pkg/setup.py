"""Build script for the optional compiled statistics kernel.

The package is pure Python except for ``gregtrees._kernel``, a small Cython
extension that accelerates per-tree statistics during exhaustive enumeration.
If Cython or a C compiler is unavailable the build silently skips the
extension; the package then falls back to ``gregtrees._kernel_py`` at import
time.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Never fail the install over the optional kernel."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"warning: skipping compiled kernel ({exc}); "
                  "the pure-Python kernel will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: could not build {ext.name} ({exc}); "
                  "the pure-Python kernel will be used")


try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("gregtrees._kernel", ["src/gregtrees/_kernel.pyx"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
