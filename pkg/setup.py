from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # pure-numpy fallback is used at runtime
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "cam16._kernels",
                ["src/cam16/_kernels.pyx"],
                extra_compile_args=["-O3", "-fno-math-errno"],
                libraries=["m"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
