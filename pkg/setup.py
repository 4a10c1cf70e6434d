import setuptools

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setuptools.setup(
    name="pyalcove",
    version="0.3.1",
    author="pyalcove developers",
    description="Exact affine Weyl group, Hecke algebra and moment graph sheaf computations.",
    long_description=long_description,
    long_description_content_type="text/markdown",
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: Apache Software License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    package_dir={"": "src"},
    packages=setuptools.find_packages(where="src"),
    include_package_data=True,
    install_requires=[
        'wheel',
        'pandas>=1.5.2',
        'xlsxwriter>=3.1.0',
        'pyyaml>=6.0',
        'numpy>=1.23',
        'sympy>=1.13',
        'networkx>=3.0',
    ],
    extras_require={
        'test': ['pytest>=7.0', 'toml', 'hypothesis>=6.0'],
    },
    entry_points={
        'console_scripts': ['pyalcove=pyalcove.cli:main'],
    },
    python_requires=">=3.9",
)
