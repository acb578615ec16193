"""
fdots Setup Configuration

Install with: pip install .
Or for development: pip install -e .[dev]
"""

from setuptools import setup, find_packages
from pathlib import Path

# Read README
readme_file = Path(__file__).parent / "README.md"
long_description = readme_file.read_text(encoding="utf-8") if readme_file.exists() else ""

setup(
    name="fdo-typesystem",
    version="0.3.0",
    author="fdots maintainers",
    description="Record, profile and attribute typing for FAIR Digital Objects",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*", "docs"]),
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Developers",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: Apache Software License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
        "Topic :: Scientific/Engineering :: Information Analysis",
    ],
    python_requires=">=3.9",
    install_requires=[
        "pyyaml>=6.0",
        "pydantic>=2.5.0",
        "numpy>=1.24.0",
        "networkx>=3.1",
        "tqdm>=4.65.0",
    ],
    extras_require={
        "dev": [
            "pytest>=7.4.0",
            "pytest-cov>=4.1.0",
            "pytest-timeout>=2.2.0",
            "hypothesis>=6.88.0",
            "black>=23.0.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "fdots=fdots.cli:main",
        ],
    },
    include_package_data=True,
    zip_safe=False,
)
