from os import path

from setuptools import setup, find_packages

here = path.abspath(path.dirname(__file__))

# Get the long description from the README file
with open(path.join(here, 'README.md'), encoding='utf-8') as f:
    long_description = f.read()


setup(
    name='polargrassmann',
    version='0.1.0',
    description='Orthogonal polar Grassmann codes: construction, parameter checks, enumerative coding '
                'and local correction',
    long_description=long_description,
    long_description_content_type='text/markdown',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Mathematics',
        'Topic :: Scientific/Engineering',
        'License :: OSI Approved :: GNU General Public License v3 (GPLv3)',
        'Programming Language :: Python :: 3 :: Only',
    ],
    keywords='coding-theory finite-geometry grassmann-codes polar-spaces finite-fields',
    packages=find_packages('src'),
    package_dir={'': 'src'},
    python_requires='>=3.7',
    install_requires=['numpy', 'scipy', 'galois', 'progressbar'],
    extras_require={
        'test': ['pytest'],
    },
    entry_points={
        'console_scripts': [
            'polargrassmann=polargrassmann.cli:main',
        ],
    },
)
