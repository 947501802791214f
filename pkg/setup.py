#!/usr/bin/env python

###############################################################################
#     assouad-sim
#
#     Copyright (C) 2026  assouad-sim developers
#
#     This program is free software: you can redistribute it and/or modify
#     it under the terms of the GNU General Public License as published by
#     the Free Software Foundation, either version 3 of the License, or
#     (at your option) any later version.
#
#     This program is distributed in the hope that it will be useful,
#     but WITHOUT ANY WARRANTY; without even the implied warranty of
#     MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
#     GNU General Public License for more details.
#
#     You should have received a copy of the GNU General Public License
#     along with this program.  If not, see [http://www.gnu.org/licenses/].
###############################################################################

from setuptools import setup, find_packages


def main():
    """Main method collecting all the parameters to setup."""
    name = "assouad-sim"

    description = "Simulated Levy and fractional paths, box and Assouad dimension estimates"

    author = "assouad-sim developers"

    license = "GPLv3"

    packages = find_packages()

    # Add your dependencies in the following line.
    install_requires = [
        "numpy>=1.22",
        "scipy>=1.6",
        "click>=8.0",
        "matplotlib>=3.4",
    ]

    python_requires = ">=3.8"

    entry_points = {
        "console_scripts": [
            "assouad-sim = assouad_sim.cli.experiments:main",
        ],
    }

    setup(
        name=name,
        use_scm_version=True,
        setup_requires=["setuptools_scm"],
        description=description,
        author=author,
        license=license,
        packages=packages,
        install_requires=install_requires,
        python_requires=python_requires,
        entry_points=entry_points,
    )

if __name__ == "__main__":
    main()
