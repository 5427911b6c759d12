"""Waveguide Transfer Sculptor: adiabatic transfer of atomic wavepackets between three waveguides."""

__version__ = "0.1.0"
