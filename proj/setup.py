import os
import subprocess
import sys
from pathlib import Path

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class CMakeExtension(Extension):
    def __init__(self, name):
        super().__init__(name, sources=[])


class CMakeBuild(build_ext):
    def build_extension(self, ext):
        out = Path(self.get_ext_fullpath(ext.name)).resolve().parent
        build_dir = Path(self.build_temp) / ext.name
        build_dir.mkdir(parents=True, exist_ok=True)
        source_dir = Path(__file__).resolve().parent
        cfg = "Debug" if self.debug else "Release"
        subprocess.run(
            [
                "cmake",
                str(source_dir),
                f"-DCMAKE_BUILD_TYPE={cfg}",
                f"-DCMAKE_LIBRARY_OUTPUT_DIRECTORY={out}",
                f"-DPython3_EXECUTABLE={sys.executable}",
                "-DOTLAB_BUILD_TESTS=OFF",
            ],
            cwd=build_dir,
            check=True,
        )
        jobs = os.cpu_count() or 1
        subprocess.run(
            ["cmake", "--build", build_dir, "--target", "_otlab_ext",
             "--parallel", str(jobs)],
            check=True,
        )


setup(
    ext_modules=[CMakeExtension("otlab")],
    cmdclass={"build_ext": CMakeBuild},
)
