import os
from setuptools import setup

package_name = "arrangealex"


def find_package_data(base_dir, data_dir):
    """Get list of all files in base_dir/data_dir, relative to base_dir."""
    paths = []
    for (path, directories, filenames) in os.walk(
        os.path.join(base_dir, data_dir)
    ):
        for filename in filenames:
            paths.append(
                os.path.relpath(os.path.join(path, filename), base_dir)
            )
    return paths


setup(
    name=package_name,
    version="0.1.0",
    packages=[package_name],
    package_dir={"": "python"},
    zip_safe=False,
    description=(
        "Twisted Alexander polynomials and closed formulas for complex line"
        " arrangements"
    ),
    license="BSD 3-Clause",
    python_requires=">=3.8",
    install_requires=[
        "numpy >=1.19.1",
        "pyyaml >=5.3.1",
        "sympy >=1.12",
    ],
    tests_require=["pytest"],
    entry_points={
        "console_scripts": [
            "arrangealex = arrangealex.__main__:main",
        ],
    },
    scripts=[
        "demos/demo_presentation.py",
        "demos/demo_random_twists.py",
        "scripts/profiling.py",
    ],
    package_data={
        "": find_package_data("python/" + package_name, "data")
    },
)
