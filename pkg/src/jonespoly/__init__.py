"""Jones polynomial of open and closed polygonal curves in 3D."""

from .bracket import bracket_oracle, bracket_split, glue, jones_of_diagram, partial_poly, split
from .diagram import Diagram, build_diagram, crossing_count, writhe
from .expected import ExpectedJonesResult, expected_jones
from .geometry import Curve3D, check_regular, fibonacci_sphere, project
from .laurent import LaurentPoly, QuarterPoly, delta_power, to_t, writhe_factor
from .reidemeister import rm1, rm2, rm3, simplify

__version__ = "0.1.0"

__all__ = [
    "Curve3D", "Diagram", "ExpectedJonesResult", "LaurentPoly", "QuarterPoly",
    "bracket_oracle", "bracket_split", "build_diagram", "check_regular", "crossing_count",
    "delta_power", "expected_jones", "fibonacci_sphere", "glue", "jones_of_diagram",
    "partial_poly", "project", "rm1", "rm2", "rm3", "simplify", "split", "to_t",
    "writhe", "writhe_factor",
]
