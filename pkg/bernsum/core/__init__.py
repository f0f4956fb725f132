"""
Core package: environment-specific configuration, component loggers and the
error hierarchy with its exit-code mapping.
"""
