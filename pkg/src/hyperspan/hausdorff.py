"""Classical Hausdorff distance between finite point sets.

Serves both as a metric in its own right and as the universal lower
bound for the forest-length distance computed elsewhere in this
package.  The implementation is the evident double loop over both
sets, costing one ambient-distance evaluation per pair.
"""

from __future__ import annotations

from .core import PointSet, _require_same_space


def hausdorff_distance(a: PointSet, b: PointSet) -> float:
    """max of the two directed max-min distances between the sets."""
    _require_same_space(a.space, b.space)
    space = a.space

    def directed(src, dst):
        return max(min(space.distance(p, q) for q in dst) for p in src)

    return max(directed(a.members, b.members), directed(b.members, a.members))
