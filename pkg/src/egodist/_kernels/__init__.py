"""Hot-kernel backend selection.

The compiled extension (``_core``) is preferred when it was built; the
numpy fallback (``_pykernels``) is otherwise used transparently. Set
``EGODIST_NATIVE=0`` to force the fallback, e.g. for benchmarking.
"""

import os

from . import _pykernels

SHAPE_SPHERE = _pykernels.SHAPE_SPHERE
SHAPE_CYLINDER = _pykernels.SHAPE_CYLINDER
SHAPE_BOX = _pykernels.SHAPE_BOX

_impl = _pykernels
if os.environ.get("EGODIST_NATIVE", "1") != "0":
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        pass

BACKEND = _impl.BACKEND_NAME

lof_scores = _impl.lof_scores
dbscan_labels = _impl.dbscan_labels
raycast = _impl.raycast
