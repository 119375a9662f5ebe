"""
Utility modules for configuration, logging, file formats and exports.
"""
