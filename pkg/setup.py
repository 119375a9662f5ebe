from setuptools import setup, find_packages

setup(
    name="seifert-interior",
    version="0.1.0",
    description="Interior polynomials of signed bipartite graphs and the top of the HOMFLY polynomial",
    author="Your Name",
    packages=find_packages(exclude=["examples", "examples.*"]),
    package_data={"database": ["catalog.json"]},
    install_requires=[
        "click>=8.1.0",
        "tabulate>=0.9.0",
        "networkx>=2.8",
        "sympy>=1.10",
    ],
    extras_require={
        "test": ["pytest>=7.0"],
    },
    entry_points={
        "console_scripts": [
            "seifert-interior=cli.commands:main",
        ],
    },
    python_requires=">=3.8",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
    ],
)
