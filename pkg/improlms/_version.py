"""improlms/improlms/_version.py.

Current version.
"""
version = "0.1.0"
