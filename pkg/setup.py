import re
from pathlib import Path
from setuptools import setup, find_packages

def get_version():
    """
    Read the version from pyproject.toml so it lives in one place.
    """
    content = Path("pyproject.toml").read_text()
    match = re.search(r'^version\s*=\s*["\'](.+)["\']', content, re.MULTILINE)
    if match:
        return match.group(1)
    raise RuntimeError("Could not find the version in pyproject.toml")

setup(
    name="crareapy",
    version=get_version(),
    description="CR-invariant area functionals of surfaces in pseudohermitian 3-manifolds",
    packages=find_packages(where="src"),
    package_dir={"": "src"},
    install_requires=[
        "numpy==1.26.4",
        "scipy==1.12.0",
        "pandas==2.2.2",
        "statsmodels==0.14.1",
        "tabulate==0.9.0",
        "joblib==1.5.1"
    ],
    entry_points={"console_scripts": ["crareapy=crareapy.cli.main:main"]},
)
