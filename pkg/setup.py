import sys
import setuptools

from covspecpy.version import __version__


with open('README.md', 'r') as fh:
    long_description = fh.read()

if sys.version_info < (3, 8):
    raise ValueError('Versions of Python before 3.8 are not supported')

setuptools.setup(
    name='covspecpy',
    version=__version__,
    description=('Covering spectra, cut-off covering spectra and delta-homotopy checks' +
                 ' for metric graphs in Python'),
    python_requires='>=3.8',
    install_requires=['msgspec', 'networkx', 'numpy', 'pandas', 'pathos', 'sympy', 'tqdm'],
    long_description=long_description,
    long_description_content_type='text/markdown',
    packages=setuptools.find_packages(exclude=['tests', 'examples', 'examples.*']),
    entry_points={'console_scripts': ['covspec=covspecpy.cli:main']},
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Programming Language :: Python :: 3',
        'License :: OSI Approved :: MIT License',
        'Operating System :: OS Independent',
    ],
 )
