"""Build script.

Compiles the optional rational-arithmetic speedup extension when Cython
and a C compiler are available.  The package is fully functional without
it (the pure backend is stdlib fractions.Fraction), so any failure here
downgrades to a pure-Python install instead of aborting.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/qshift/_qarith/_speedups.pyx"],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    print(f"qshift: building without compiled kernel ({exc})")

setup(ext_modules=ext_modules)
