"""subnetsim
Discrete-time simulator of mobile in-factory subnetworks with AoI-aware, learning-based radio resource allocation.
"""

__version__ = "0.1.0"
