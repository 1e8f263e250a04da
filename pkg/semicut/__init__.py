"""semicut: exact feedback arc set, cutwidth and linear arrangement on semi-complete digraphs."""

__version__ = "0.1.0"
