"""Build script: compiles the optional fast kernels.

The extension is a convenience, not a requirement: if Cython or a C
compiler is missing the build falls back to the pure-Python kernels
(ebovax.kernels.pure) and everything still works, just slower.

-ffp-contract=off keeps the compiler from fusing multiply-adds so the
compiled kernels produce bitwise-identical results to the pure-Python
twin (a test asserts this).
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


if sys.platform == "win32":
    compile_args = ["/O2", "/fp:precise"]
else:
    compile_args = ["-O3", "-ffp-contract=off"]


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("ebovax: Cython not available, skipping native kernels", file=sys.stderr)
        return []
    return cythonize(
        [
            Extension(
                "ebovax.kernels._native",
                ["src/ebovax/kernels/_native.pyx"],
                extra_compile_args=compile_args,
            )
        ],
        language_level=3,
    )


class optional_build_ext(build_ext):
    """Build the extension if possible, warn and continue if not."""

    def run(self):
        try:
            super().run()
        except Exception as exc:
            print(f"ebovax: native kernel build skipped ({exc})", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"ebovax: native kernel build skipped ({exc})", file=sys.stderr)


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
