"""Builder/Painter restricted online Ramsey games on matchings."""

__version__ = "0.1.0"
