from setuptools import setup, find_packages
import codecs
import os

here = os.path.abspath(os.path.dirname(__file__))

with codecs.open(os.path.join(here, "README.md"), encoding="utf-8") as fh:
    LONG_DESCRIPTION = "\n" + fh.read()

VERSION = '0.1.0'
DESCRIPTION = 'Non-existence proofs for binary linear codes'

setup(
    name="LinCodeProver",
    version=VERSION,
    author="Aleksei Marianov",
    author_email="marjanov.alexei@gmail.com",
    long_description_content_type="text/markdown",
    description=DESCRIPTION,
    long_description=LONG_DESCRIPTION,
    packages=['LinCodeProver'],
    package_data={'LinCodeProver': ['data/*.csv', 'data/*.json']},
    install_requires=['numpy', 'scipy'],
    extras_require={'tests': ['pytest']},
    entry_points={'console_scripts': ['lincodeprover = LinCodeProver.cli:main']},
    keywords=['python', 'coding theory', 'linear codes', 'MacWilliams identities', 'Griesmer bound', 'Z4-linear codes'],
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Mathematics"
    ],
    python_requires='>=3.9',
    include_package_data=True
)
