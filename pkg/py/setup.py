import re

from setuptools import setup, find_packages


_version_re = re.compile(r'(?m)^__version__\s*=\s*"(.*?)"\s*$')


with open("README", encoding="UTF-8") as f:
    readme = f.read()


with open("kdirac/_version.py") as f:
    match = _version_re.search(f.read())
    assert match is not None
    version = match[1]


setup(
    name="kdirac-workbench",
    version=version,
    packages=find_packages(exclude=["tests", "tests.*"]),
    description="Exact-arithmetic checks for the k-Dirac complex on spinor fields.",
    long_description=readme,
    long_description_content_type="text/markdown",
    include_package_data=True,
    package_data={"kdirac": ["py.typed"]},
    zip_safe=False,
    platforms="any",
    python_requires=">=3.11",
    install_requires=[
        "sympy>=1.12",
        "click>=8.1",
        "PyYAML>=6.0",
        "sentry-sdk>=2.10",
    ],
    entry_points={"console_scripts": ["kdirac=kdirac.cli:main"]},
)
