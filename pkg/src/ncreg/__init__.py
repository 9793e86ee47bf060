"""Exact computations for connected graded noncommutative algebras.

Gröbner bases, minimal graded free resolutions, Betti tables, Ext- and
Castelnuovo-Mumford regularity, depth, Koszulness and AS-Gorenstein
classification, all over finite prime fields or the rationals.
"""

__version__ = "0.1.0"
