"""
Setup configuration for wonderlat.
"""

from setuptools import setup, find_packages
from pathlib import Path

# Read README for long description
readme_file = Path(__file__).parent / "README.md"
long_description = readme_file.read_text(encoding="utf-8") if readme_file.exists() else ""

setup(
    name="wonderlat",
    version="0.3.0",
    description="Lattice computations and reducibility certificates on wonderful varieties",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*"]),
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Mathematics",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Programming Language :: Python :: 3.12",
    ],
    python_requires=">=3.10",
    install_requires=[
        # Exact arithmetic and matrices
        "numpy>=1.26.4",
        "sympy>=1.12",

        # Tables and result files
        "pandas>=2.0.3",

        # Datum file validation
        "pydantic>=2.0",

        # Utilities
        "tqdm>=4.66.1",
        "python-dotenv>=1.0.0",
        "typing-extensions>=4.9.0",
    ],
    extras_require={
        "dev": [
            "pytest>=7.0.0",
            "pytest-cov>=4.0.0",
            "hypothesis>=6.0",
            "jsonschema>=4.0",
            "black>=23.0.0",
            "isort>=5.12.0",
            "flake8>=6.0.0",
            "mypy>=1.0.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "wonderlat=wonderlat.cli:main",
        ],
    },
    zip_safe=False,
)
