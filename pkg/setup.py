from setuptools import Extension, setup
from Cython.Build import cythonize

ext_modules = [
    Extension(
        "gstalign._speedups",
        sources=["src/gstalign/_speedups.pyx"],
        language="c++",
        extra_compile_args=["-O3"],
    )
]

setup(ext_modules=cythonize(ext_modules, language_level=3))
