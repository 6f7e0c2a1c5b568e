import glob

from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "sacirc._sacirc",
    sorted(glob.glob("src/*.cpp")) + ["bindings/pymodule.cpp"],
    include_dirs=["include", "vendor", "/usr/include/eigen3"],
    libraries=["mpfr", "gmpxx", "gmp"],
    cxx_std=20,
    extra_compile_args=["-O2"],
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
