import sys

if sys.version_info < (3, 6):
    sys.exit('hbmodel requires Python >= 3.6')
from pathlib import Path

from setuptools import setup, find_packages


setup(
    name='hbmodel',
    use_scm_version=True,
    setup_requires=['setuptools_scm'],
    description='Minimal Hirsch–Brown models of equivariant cohomology in exact arithmetic.',
    long_description=Path('README.rst').read_text('utf-8'),
    license='BSD',
    python_requires='>=3.6',
    install_requires=[
        l.strip() for l in Path('requirements.txt').read_text('utf-8').splitlines()
        if l.strip() and not l.startswith('#')
    ],
    extras_require=dict(
        test=[
            'pytest>=4.4',
            'black',
        ],
    ),
    packages=find_packages(),
    package_data={'hbmodel.datasets': ['*.json']},
    include_package_data=True,
    entry_points=dict(console_scripts=['hbmodel=hbmodel.cli:console_main']),
    zip_safe=False,
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'Natural Language :: English',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.6',
        'Programming Language :: Python :: 3.7',
        'Programming Language :: Python :: 3.8',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
)
