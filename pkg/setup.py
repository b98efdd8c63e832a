"""Build script: compiles the optional batch-cipher kernel extension.

The package works without the extension (a numpy fallback is selected at
import time), so a failed compile downgrades to a warning instead of
aborting the install. Set GAES_PURE_PYTHON=1 to skip the extension build.
"""

import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            f"warning: compiled kernel build failed ({exc}); "
            "falling back to the pure-numpy backend",
            file=sys.stderr,
        )


ext_modules = []
if not os.environ.get("GAES_PURE_PYTHON"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [
                Extension(
                    "gaes._kernel",
                    ["src/gaes/_kernel.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        print(
            "warning: Cython not available; building without the compiled kernel",
            file=sys.stderr,
        )

setup(ext_modules=ext_modules, cmdclass={"build_ext": optional_build_ext})
