from setuptools import find_namespace_packages, setup

with open("README.md", "r") as fh:
    long_description = fh.read()
with open("VERSION", "r") as version_file:
    version = version_file.read().strip()
with open("requirements.txt", "r") as requirements_file:
    install_requires = requirements_file.read().splitlines()

setup(
    name="vdgcheck",
    version=version,
    description="Model checking and strategy synthesis for the iterated "
        "volunteer's dilemma",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=["vdgcheck"] + find_namespace_packages(include=["vdgcheck.*"]),
    package_data={"vdgcheck": ["py.typed"]},
    entry_points={"console_scripts": ["vdg=vdgcheck.cli:main"]},
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics"
    ],
    python_requires='>=3.8',
    install_requires=install_requires,
    extras_require={"test": ["hypothesis"]}
)
