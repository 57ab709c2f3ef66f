#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
    setup.py
    ~~~~~~~~

    Exact Dedekind numbers from P-coefficient counting formulas over the
lattice of antichains, with an oracle, symmetry reduction and a sharded runner.

    :license: see LICENSE for more details.
"""

import os
from setuptools import setup

here = os.path.abspath(os.path.dirname(__file__))


def get_version():
    version_file_path = os.path.join(here, "package_version.txt")
    if not os.path.isfile(version_file_path):
        return "0.0.0.dev0"
    version = None
    with open(version_file_path, "r") as raw:
        version = raw.read()

    return version


setup(
    name="dedekind_pcoef",
    version=get_version(),
    description="Exact Dedekind numbers from P-coefficient counting formulas over the antichain lattice.",
    long_description="Please see README.md",
    classifiers=[],
    packages=["dedekind_pcoef", "dedekind_pcoef/lattice"],
    package_data={"dedekind_pcoef": ["tables.yaml"]},
    platforms="any",
    license="LICENSE",
    install_requires=[
        "PyYAML>=5.0",
        "zthreading>=0.1.13",
    ],
    extras_require={
        "test": [
            "pytest>=6.0",
            "hypothesis>=6.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "dedekind-pcoef=dedekind_pcoef.cli:main",
        ],
    },
    python_requires=">=3.7",
    include_package_data=True,
)
