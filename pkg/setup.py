"""
Setup script for the OU Impact Verifier
"""

from setuptools import setup, find_packages

# Read README for long description
try:
    with open("README.md", "r", encoding="utf-8") as fh:
        long_description = fh.read()
except FileNotFoundError:
    long_description = "Closed-form optimal trading with temporary impact in an OU market, verified numerically"

# Runtime requirements only; the development tools live in extras_require
with open("requirements.txt", "r") as fh:
    requirements = [
        line.split("#")[0].strip()
        for line in fh
        if line.strip() and not line.startswith("#")
    ]
runtime = [r for r in requirements if not r.startswith(("pytest", "black", "isort", "mypy", "flake8"))]

setup(
    name="ou-impact-verifier",
    version="1.0.0",
    author="Trading Team",
    author_email="trading@example.com",
    description="Optimal trading with linear temporary impact under an Ornstein-Uhlenbeck price",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=("examples", "examples.*")),
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Financial and Insurance Industry",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Office/Business :: Financial :: Investment",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    python_requires=">=3.9",
    install_requires=runtime,
    extras_require={
        "dev": [
            "pytest>=7.0.0",
            "pytest-cov>=4.0.0",
            "black>=23.0.0",
            "isort>=5.12.0",
            "mypy>=1.0.0",
            "flake8>=6.0.0",
        ],
    },
    entry_points={
        "console_scripts": [
            "ou-impact=src.main:main",
        ],
    },
    package_data={
        "": ["*.yaml", "*.yml", "*.json", "*.md", "*.txt"],
    },
    include_package_data=True,
    zip_safe=False,
)
