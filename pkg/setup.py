""" Setup file for the monce-eval package """

from setuptools import setup, find_namespace_packages

NAME = "monce-eval"
VERSION = "1.0.0"

setup(
    name=NAME,
    description="MONCE metrics for long-term, non-contiguous multi-object tracking",
    version=VERSION,
    packages=find_namespace_packages(include=["monce_eval", "monce_eval.*"]),
    include_package_data=True,
    package_data={
        "": ["defaults.env"],
    },
    python_requires=">=3.9",
    install_requires=[
        "Markdown",
        "python-dotenv",
        "numpy",
        "scipy",
        "matplotlib",
    ],
    extras_require={
        "test": ["pytest", "hypothesis"],
    },
    entry_points={
        "console_scripts": ["monce=monce_eval.__main__:run"],
    },
)
