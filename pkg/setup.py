from setuptools import setup, find_packages

with open("README.md", "r", encoding="utf-8") as fh:
    long_description = fh.read()

setup(
    name="latentstart",
    version="0.1.0",
    author="Your Name",
    author_email="your.email@example.com",
    description="latentstart - DDIM startpoint enhancement for training-free style transfer",
    long_description=long_description,
    long_description_content_type="text/markdown",
    url="https://github.com/yourusername/latentstart",
    packages=find_packages(exclude=["tests", "tests.*", "benchmarks"]),
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Artificial Intelligence",
    ],
    python_requires='>=3.8',
    install_requires=[
        'numpy>=1.22',
        'scipy>=1.8',
        'pydantic>=2.0',
    ],
    entry_points={
        'console_scripts': [
            'latentstart=latentstart.cli:main',
        ],
    },
)
