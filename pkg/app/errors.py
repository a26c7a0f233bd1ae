#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Near Automorphism Lab - Errors
Exception hierarchy shared by the library and the command line
"""

from typing import Optional


class NearAutomorphismError(Exception):
    """Base class for every error raised by the library"""

    exit_code = 1


class ParseError(NearAutomorphismError):
    """Malformed edge list, family spec or permutation text"""

    exit_code = 2


class InvalidParameterError(NearAutomorphismError):
    """Argument outside the range an operation accepts"""

    exit_code = 3


class DisconnectedGraphError(NearAutomorphismError):
    """Distances are undefined on a disconnected graph"""

    exit_code = 4


class BudgetExceededError(NearAutomorphismError):
    """Search stopped at the node budget; the best value seen so far is kept"""

    exit_code = 5

    def __init__(self, message: str, incumbent: Optional[int] = None,
                 nodes_explored: int = 0):
        super().__init__(message)
        self.incumbent = incumbent
        self.nodes_explored = nodes_explored


class VerificationFailedError(NearAutomorphismError):
    """A check or the characterization comparison found a discrepancy"""

    exit_code = 6


class NoNearAutomorphismError(NearAutomorphismError):
    """Complete graphs only have automorphisms"""

    exit_code = 7
