from setuptools import setup
import re
import typing


def get_version() -> str:
    with open("vcsp/__init__.py", "r") as f:
        matches = re.search(r"__version__\s*=\s*\"(\d+\.\d+\.\d+)\"", f.read())
        assert matches is not None
        return matches[1]


def parse_requirements(file_name: str) -> typing.List[str]:
    requirements = []

    with open(file_name, "r") as f:
        for line in f.readlines():
            line = line.strip()

            if line == "" or line.startswith("#"):
                continue

            requirements.append(line)

    return requirements


setup(
    name="vcsp",
    version=get_version(),
    description="Valued structures: cores, improvement, widths and Sherali-Adams tightness",
    packages=["vcsp", "vcsp_recipes"],
    python_requires=">=3.8.0",
    install_requires=parse_requirements("requirements.txt"),
    extras_require={
        "test": parse_requirements("requirements-test.txt"),
    },
    entry_points={
        "console_scripts": [
            "vcsp = vcsp.cli:main",
        ],
    },
)
