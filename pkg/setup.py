from setuptools import find_packages, setup

setup(
    name="seqrx",
    version="0.1.0",
    packages=find_packages(exclude=("tests",)),
    include_package_data=True,
    install_requires=[
        "numpy",
        "pandas",
        "scipy",
    ],
    extras_require={
        "dev": ["black", "pytest", "hypothesis"],
    },
    entry_points={
        "console_scripts": [
            "seqrx=seqrx:launch",
        ],
    },
    author="Wolf Mermelstein",
    author_email="wolfmermelstein@gmail.com",
    description="Sequential-decoding receiver simulator for bosonic channels",
    python_requires=">=3.10",
)
