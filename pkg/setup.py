from setuptools import setup, find_packages

setup(
    name='qsframework',
    version='0.1',
    description='Stochastic quantum mechanics in Python: Langevin paths, Fokker-Planck and Schrodinger solvers, '
                'invariant mass ledgers and electromagnetic energy budgets',
    packages=find_packages(exclude="tests"),
    python_requires='>=3.9.0',
    include_package_data=True,
    install_requires=["overrides", "numpy", "scipy>=1.12", "PyYAML"],
    entry_points={'console_scripts': ['qsframework=qsframework.cli.__main__:main']}
)
