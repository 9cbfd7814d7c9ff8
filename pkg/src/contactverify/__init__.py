"""Exact symbolic checks for contact forms, Mayer-Vietoris replays and group presentations."""

__version__ = "0.1.0"
