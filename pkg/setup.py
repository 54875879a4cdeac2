"""Builds the optional compiled kernels; the package works without them."""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler or Cython missing
            print(f"warning: compiled kernels not built ({exc}); using the numpy fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: could not build {ext.name} ({exc}); using the numpy fallback")


def extensions():
    if os.environ.get("RETRODICT_PURE_PYTHON"):
        return []
    try:
        from Cython.Build import cythonize
        import numpy
    except ImportError:
        return []
    from setuptools import Extension
    ext = Extension("retrodict._ckernels", ["src/retrodict/_ckernels.pyx"],
                    include_dirs=[numpy.get_include()], extra_compile_args=["-O3"])
    return cythonize([ext], quiet=True)


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
