"""Element kernel backend selection.

Imports the compiled core when it is available, otherwise the pure-Python
fallback.  Set POROMORPH_FORCE_PYTHON=1 to skip the compiled module; both
backends give bitwise-identical output.
"""

import os

if os.environ.get("POROMORPH_FORCE_PYTHON", "").strip() not in ("", "0"):
    from . import _core_py as _backend
    COMPILED = False
else:
    try:
        from . import _core as _backend
        COMPILED = True
    except ImportError:
        from . import _core_py as _backend
        COMPILED = False

p1_geometry = _backend.p1_geometry
mass_triplets = _backend.mass_triplets
stiffness_triplets = _backend.stiffness_triplets
divergence_triplets = _backend.divergence_triplets
elastic_triplets = _backend.elastic_triplets
viscous_triplets = _backend.viscous_triplets
strain_coupling_triplets = _backend.strain_coupling_triplets
strain_nonlinear = _backend.strain_nonlinear

BACKEND = _backend.__name__.rsplit(".", 1)[-1].lstrip("_")
