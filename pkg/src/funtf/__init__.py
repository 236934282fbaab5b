"""
funtf - finite unit norm tight frames through their eigensteps.

A FUNTF is N unit vectors in R^d or C^d whose frame operator is (N/d) I.
funtf builds them from eigensteps tables, turns straight paths of
eigensteps into continuous paths of frames, connects frames, and runs the
explicit frame-operator-preserving motions used to connect real frames.

Architecture:
    - numerics: field-generic dense linear algebra (eigh, geodesics, completion)
    - eigensteps: tables, validation, interior test, sampling
    - frames: Frame, FUNTF checks, OD analysis, spark, Naimark, FramePath
    - lifting: index data, synthesis, base data recovery, lifted paths
    - motions: spinning, swaps, negation, the morph and the two-basis swap
    - engine: connect, connect-nod, the full spark experiment
    - report / cli: console, JSON and CSV output; the typer application

Example usage:
    $ funtf sample 6 3 --frame --seed 1 -o F.json
    $ funtf connect F.json G.json -o path.csv
    $ funtf morph 3 -o morph.csv
"""

__version__ = "0.1.0"
__author__ = "funtf Contributors"

__all__ = [
    "__author__",
    "__version__",
]
