"""
Utility modules for leibalg: exact linear algebra, finite-field oracles,
logging helpers and host information.
"""
