from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("solvlie._ckernel", ["src/solvlie/_ckernel.pyx"])],
        language_level="3",
    )
except ImportError:
    # Pure-Python fallback kernel is used when the extension is unavailable.
    extensions = []

setup(ext_modules=extensions)
