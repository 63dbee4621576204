from setuptools import setup

try:
    import pypandoc
    long_description = pypandoc.convert('README.md', 'rst')
except (IOError, ImportError):
    long_description = ''

def get_version():
    with open("opentropy/__init__.py") as f:
        for line in f:
            if line.startswith("__version__"):
                return line[15:-2]
    raise Exception("Could not find version number")

entry_points = {
        "console_scripts": [
            "opentropy = opentropy.manager:main",
        ],
}

setup(
    name="opentropy",
    version=get_version(),
    author='The opentropy developers',
    packages=['opentropy'],
    zip_safe=False,
    entry_points=entry_points,
    license='GPLv3+',
    description='Numerical checks of operator entropy inequalities',
    long_description=long_description,
    tests_require=['pytest', 'mock', 'hypothesis'],
    install_requires=[
        "numpy",
        "Flask>=1.1,<2",
        "Jinja2<3",
        "markupsafe<2.1",
        "itsdangerous<2.1",
        "werkzeug<2.0",
        "Flask-Script",
        "strict-rfc3339",
        "python-dateutil",
    ],
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: GNU General Public License v3 or later (GPLv3+)',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
)
