"""
Procedures built on the lattice layer.
"""

from .limit import DegenerationChain, LimitStep, degeneration_chain, limit_pushforward
from .reducibility import Certificate, check_certificate, find_certificate

__all__ = [
    'Certificate',
    'check_certificate',
    'find_certificate',
    'DegenerationChain',
    'LimitStep',
    'degeneration_chain',
    'limit_pushforward',
]
