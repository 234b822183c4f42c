from setuptools import setup, find_packages
__version__ = "0.3a"


def readme():
    with open('README.md') as f:
        return f.read()


setup(name='libxostar',
      version=__version__,
      description='Bielliptic quotient modular curves X_0^*(N)',
      long_description=readme(),
      classifiers=[
            'Development Status :: 2 - Pre-Alpha',
            'Intended Audience :: Science/Research',
            'License :: OSI Approved :: GNU General Public License v3 (GPLv3)',
            'Programming Language :: Python :: 3',
            'Topic :: Scientific/Engineering :: Mathematics',
      ],
      keywords='modular curves bielliptic atkin-lehner newforms',
      license='GPLv3',
      packages=find_packages(exclude=['tests', 'tests.*']),
      entry_points={
            'console_scripts': [
                  'xostar = libxostar.cli:main'
            ],
            'gui_scripts': []
      },
      install_requires=[
            'numpy', 'pandas', 'sympy>=1.13', 'xxhash', 'colorama'
      ],
      extras_require={
            'test': ['pytest']
      },
      python_requires='>=3.8',
      zip_safe=False)
