"""Builds the `epcontact._core` extension by driving the project's CMake."""

import os
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name: str, sourcedir: str = "") -> None:
        super().__init__(name, sources=[])
        self.sourcedir = os.fspath(Path(sourcedir).resolve())


class CMakeBuild(build_ext):
    def build_extension(self, ext: CMakeExtension) -> None:
        # Directory that must end up containing epcontact/_core*.so; in
        # editable mode this is the source package, otherwise the wheel tree.
        extdir = Path(self.get_ext_fullpath(ext.name)).resolve().parent
        extdir.mkdir(parents=True, exist_ok=True)

        build_temp = Path(self.build_temp).resolve() / ext.name
        build_temp.mkdir(parents=True, exist_ok=True)

        cfg = "Debug" if self.debug else "Release"
        cmake_args = [
            f"-DCMAKE_BUILD_TYPE={cfg}",
            f"-DPython3_EXECUTABLE={sys.executable}",
            f"-DEPCONTACT_PYTHON_OUTPUT_DIR={extdir}",
            "-DEPCONTACT_BUILD_PYTHON=ON",
            "-DEPCONTACT_BUILD_TESTS=OFF",
        ]
        subprocess.run(
            ["cmake", ext.sourcedir, *cmake_args], cwd=build_temp, check=True
        )
        subprocess.run(
            [
                "cmake",
                "--build",
                ".",
                "--target",
                "_core",
                f"-j{os.cpu_count() or 2}",
            ],
            cwd=build_temp,
            check=True,
        )


setup(
    ext_modules=[CMakeExtension("epcontact._core")],
    cmdclass={"build_ext": CMakeBuild},
)
