# pyright: reportUnusedImport=false

# Import CLI submodules to register them to the app
# isort: split


from . import experiments  # noqa: F401
