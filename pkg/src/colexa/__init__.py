"""colexa: exact-arithmetic qudit color codes and gauge color codes."""

__version__ = "0.1.0"
