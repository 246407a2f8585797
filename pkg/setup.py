import sys

from setuptools import setup

# The compiled kernel is optional: latmod.kernel falls back to the pure-Python
# twin when the extension is missing, so a failed cythonize must not block the
# install.
ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "latmod._speedups",
                sources=["src/latmod/_speedups.pyx"],
                extra_compile_args=["-O2"],
            )
        ],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover
    sys.stderr.write(f"latmod: building without compiled kernel ({exc})\n")

setup(ext_modules=ext_modules)
