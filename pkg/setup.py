# ！/usr/bin/env python
# -*- coding: UTF-8 -*-
"""
@Project: pydpcolor
@File: setup.py
@Date: 2026/10/17
"""

import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(
    name="pydpcolor",
    version="0.1",
    description="DP-coloring search, reducible configurations and discharging checks for plane graphs",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(exclude=("test",)),
    python_requires=">=3.8",
    install_requires=['networkx>=3.1', 'numpy>=1.22', 'tqdm>=4.60'],
    extras_require={
        'test': ['pytest>=7'],
    },
    entry_points={
        'console_scripts': [
            'dpcolor=pydpcolor.dpcolor:main'
        ],
    },
    classifiers=(
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: GNU General Public License v2 (GPLv2)",
        "Operating System :: OS Independent",
    ),
)
