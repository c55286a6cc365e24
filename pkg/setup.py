"""Build hook for the optional compiled kernels.

The extension is marked optional: if Cython or a C compiler is missing the
package still installs and ``trigfib._backend`` falls back to pure Python.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "trigfib._ckernels",
                ["src/trigfib/_ckernels.pyx"],
                extra_compile_args=["-O2", "-ffp-contract=off", "-fno-fast-math", "-fno-builtin"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
