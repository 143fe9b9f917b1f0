"""Combinatorial Morse theory on triangulated surfaces, with a focus on the
Moebius band: Reeb graphs, curve types, the annulus-plus-disks decomposition
and the symmetry group acting on the disks."""

__version__ = "0.1.0"
