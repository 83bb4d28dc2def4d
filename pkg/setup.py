from setuptools import setup, find_packages

setup(
    name='kakeya',
    version='0.1.0',
    packages=find_packages(exclude=['tests']),
    install_requires=[
        'numpy', 'scipy', 'pandas', 'tabulate', 'loguru'
    ],
    entry_points={
        'console_scripts': ['kakeya=kakeya.cli:main'],
    },
)
