"""p-centered colorings of sparse graphs and a colour-coding subgraph matcher."""

__version__ = "0.1.0"
