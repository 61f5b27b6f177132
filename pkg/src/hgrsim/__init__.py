"""Packet-level simulator for geographic, virtual-coordinate and hybrid (HGR) routing
in wireless sensor networks."""

__version__ = "0.1.0"
