"""Parameter count for crowned hyperbolic surfaces."""
from __future__ import annotations

from .track import TrackError


def crowned_dimension(g: int, k: int, l: int, m) -> int:
    """Real parameters of a crowned surface: genus g, k crown ends with
    cusp counts m = [m_1..m_k], l closed geodesic boundary components.

    For g >= 1 the count is 6g - 6 + 3l + sum(m_i + 3); the genus-0 ideal
    polygon case (k = 1, l = 0, m >= 3) gives m - 3.
    """
    m = list(m) if not isinstance(m, int) else [m]
    if any(int(x) != x or x < 1 for x in m):
        raise TrackError("cusp counts must be positive integers")
    if k != len(m):
        raise TrackError(f"expected {k} cusp counts, got {len(m)}")
    if g >= 1:
        return 6 * g - 6 + 3 * l + sum(mi + 3 for mi in m)
    if g == 0 and k == 1 and l == 0:
        if m[0] < 3:
            raise TrackError("an ideal polygon needs at least 3 cusps")
        return m[0] - 3
    raise TrackError(
        f"unsupported combination (g={g}, k={k}, l={l}); need g >= 1 or the "
        "ideal-polygon case g=0, k=1, l=0"
    )
