"""
qisosrg package.
Exact construction and verification of a quantum-isomorphic, non-isomorphic
pair of strongly regular graphs on 120 vertices.
"""
