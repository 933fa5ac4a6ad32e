"""Monotone Hamilton path machinery for simple polytopes dual to cyclic ones.

Subpackages by task: combinatorics (`polytope`, `orientation`), search
(`enumeration`), exact geometry (`galediagram`, `realize`), certificates
(`certify`, `checkcert`) and the command line front end (`cli`).
"""

__version__ = "0.1.0"
