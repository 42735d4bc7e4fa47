"""Build script: compiles the optional Cython coefficient kernel.

The package is pure Python; the extension only accelerates the hot
polynomial arithmetic.  If Cython or a C compiler is unavailable the
build silently falls back to the pure lane (selected at import time
in qclass._core).
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/qclass/_core/_speed.pyx",
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - toolchain dependent
    print(f"qclass: skipping compiled kernel ({exc}); pure-Python lane will be used")

setup(ext_modules=ext_modules)
