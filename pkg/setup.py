import os

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy as np
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "dlcbounds.kernels._ckernels",
                [os.path.join("src", "dlcbounds", "kernels", "_ckernels.pyx")],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=[] if os.name == "nt" else ["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    # no Cython/numpy at build time -> numpy fallback only
    ext_modules = []

setup(ext_modules=ext_modules)
