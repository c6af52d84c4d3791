"""
Command-line interfaces for leibalg.
"""
