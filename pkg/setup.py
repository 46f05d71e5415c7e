#!/usr/bin/env python
# -*- encoding: utf-8 -*-

from setuptools import setup, find_packages

setup(
    name="Rotelem",
    version="0.1.0",
    description="Rotation elements of periodic points of vertex maps on graphs",
    author="the Rotelem developers",
    author_email="",
    url="",
    packages=find_packages(exclude=["test", "examples", "examples.*"]),
    package_data={"config": ["conf.json"]},
    install_requires=["networkx", "numpy", "graphviz", "tqdm"],
    entry_points={"console_scripts": ["rotelem = rotelem.cli:main"]},
)
