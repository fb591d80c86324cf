"""Exact undirected determinants, permanents and matchings of planar graphs."""

from .errors import InputError, ResourceBoundExceeded, UcountError, VerificationError
from .fkt import perfmatch_planar, pfaffian_orientation, uperm_degree3, verify_pfaffian
from .gadget import Gadget, Stub, gadget_from_json, gadget_to_json
from .graph import Edge, Multigraph, RotationSystem, SkewMatrix, graph_from_json, graph_to_json, validate_embedding
from .oracle import f_constancy_check, gadget_signature, perfmatch, udet, uperm
from .pfaffian import pfaffian
from .reduce import CnfFormula, compile, cubicize, parse_dimacs, sat_count
from .semipfaffian import find_semi_pfaffian, tension, udet_cubic, verify_semi_pfaffian

__version__ = "0.1.0"
