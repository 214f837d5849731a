from importlib.metadata import version

__version__ = version("geofix")

__all__ = ["__version__"]
