"""
Models package for value types.
This package contains the Scalar carrier and the moment, series and oracle models.
"""
