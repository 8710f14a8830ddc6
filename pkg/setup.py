"""
#    Copyright 2022 Red Hat
#
#    Licensed under the Apache License, Version 2.0 (the "License"); you may
#    not use this file except in compliance with the License. You may obtain
#    a copy of the License at
#
#         http://www.apache.org/licenses/LICENSE-2.0
#
#    Unless required by applicable law or agreed to in writing, software
#    distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
#    WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
#    License for the specific language governing permissions and limitations
#    under the License.
"""
from setuptools import find_packages, setup

setup(
    name='saddlelab',
    author='RHOS CRE Team',
    license='Apache',
    description='saddlelab is a numerical laboratory for holomorphic '
    'endomorphisms of the complex projective plane and their saddle '
    'measures',
    version='0.1.0',
    packages=find_packages(exclude=('tests', 'tests.*')),
    python_requires='>=3.8',
    install_requires=[
        'pyyaml>=5.0',
        'colorlog~=6.6.0',
        'numpy>=1.21',
        'scipy>=1.7',
        'joblib>=1.1',
    ],
    entry_points={
        'console_scripts': ['saddlelab = saddlelab.cli.main:main']
    }
)
