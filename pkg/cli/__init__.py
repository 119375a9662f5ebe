"""
Command-line interface using Click.
"""
