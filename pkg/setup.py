#!/usr/bin/env python
from setuptools import setup
from codecs import open


def readme():
    with open("README.md", "r") as infile:
        return infile.read()


classifiers = [
    "Development Status :: 3 - Alpha",
    "License :: OSI Approved :: MIT License",
    "Intended Audience :: Science/Research",
    "Topic :: Scientific/Engineering :: Mathematics",
    "Programming Language :: Python :: 3.8",
    "Programming Language :: Python :: 3.9",
    "Programming Language :: Python :: 3.10",
    "Programming Language :: Python :: 3.11",
]
setup(
    name="interval-newton",
    version="0.1.0",
    description="Newton method for multiobjective interval optimization.",
    packages=["interval_newton"],
    license="MIT",
    keywords="multiobjective optimization interval newton pareto",
    long_description=readme(),
    classifiers=classifiers,
    long_description_content_type="text/markdown",
    python_requires=">=3.8",
    install_requires=[
        "click>=8.0",
        "numpy>=1.21",
        "scipy>=1.9",
        "pandas>=1.5",
        "matplotlib>=3.5",
    ],
    extras_require={"test": ["Django>=3.2"]},
    entry_points={"console_scripts": ["interval-newton = interval_newton.cli:main"]},
)
