"""Weighted Reed-Muller codes, their eta-lifts, local correction and PIR."""

from .codes import DegreeSet, MonomialCode, encode, unencode, systematic_encode, wrm_code, wrm_degree_set
from .gf import Field
from .lift import delta_set, lift_code, lift_degree_set, lift_dimension
from .rs import DecodingFailure, RsCode, rs_decode_ee, rs_encode

__all__ = [
    "DecodingFailure", "DegreeSet", "Field", "MonomialCode", "RsCode", "delta_set", "encode",
    "lift_code", "lift_degree_set", "lift_dimension", "rs_decode_ee", "rs_encode",
    "systematic_encode", "unencode", "wrm_code", "wrm_degree_set",
]
