"""
The supergroup: Lorentz part, closed product law and inverse.
"""
from .element import GroupElement, Supergroup, compose, exp_nilpotent, inverse, rep_of_element
from .lorentz import LorentzElement

__all__ = [
    "GroupElement",
    "Supergroup",
    "compose",
    "exp_nilpotent",
    "inverse",
    "rep_of_element",
    "LorentzElement",
]
