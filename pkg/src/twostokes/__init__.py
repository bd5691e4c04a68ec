"""Two-photon Stokes parameters for photon-pair polarization states."""

__version__ = "0.1.0"
