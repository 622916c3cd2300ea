"""
Caching of per-pair analyses.

Candidate tables, classifications and gap families are pure functions of
(start, goal, κ) and are reused by elongation, fleet planning and the
CLI within one run.

Key Features:
- Thread-safe access with Lock (fleet planning runs vehicles on a pool)
- Bounded size with oldest-first eviction
- Separate stores for analyses and gap families
"""

import threading
import time
from collections import OrderedDict
from typing import Any, Dict, Optional, Tuple

from ..utils.geometry import CurvatureBound, OrientedPose

CacheKey = Tuple[float, float, float, float, float, float, float]


def cache_key(X: OrientedPose, Y: OrientedPose, k: CurvatureBound) -> CacheKey:
    return (X.x, X.y, X.theta, Y.x, Y.y, Y.theta, k.kappa)


class AnalysisCache:
    """
    Cache for feasibility analyses and gap families.

    Entries never go stale (inputs are immutable values), so there is no
    TTL; the store is bounded by MAX_ENTRIES instead.
    """

    _stores: Dict[str, 'OrderedDict[CacheKey, Any]'] = {
        'analysis': OrderedDict(),
        'family': OrderedDict(),
    }
    _stats = {'hits': 0, 'misses': 0, 'created': time.time()}

    _lock = threading.Lock()

    MAX_ENTRIES = 512

    @classmethod
    def get(cls, key: CacheKey, store: str = 'analysis') -> Optional[Any]:
        """
        Get a cached entry.

        Args:
            key: Key from cache_key()
            store: 'analysis' or 'family'

        Returns:
            The cached value or None
        """
        with cls._lock:
            value = cls._stores[store].get(key)
            if value is None:
                cls._stats['misses'] += 1
            else:
                cls._stats['hits'] += 1
            return value

    @classmethod
    def set(cls, key: CacheKey, value: Any, store: str = 'analysis'):
        """Cache a value, evicting the oldest entries beyond MAX_ENTRIES."""
        with cls._lock:
            entries = cls._stores[store]
            entries[key] = value
            entries.move_to_end(key)
            while len(entries) > cls.MAX_ENTRIES:
                entries.popitem(last=False)

    @classmethod
    def invalidate(cls):
        """Clear all cached data."""
        with cls._lock:
            for entries in cls._stores.values():
                entries.clear()
            cls._stats = {'hits': 0, 'misses': 0, 'created': time.time()}

    @classmethod
    def get_cache_summary(cls) -> Dict[str, Any]:
        """Get summary for debugging."""
        with cls._lock:
            return {
                'analyses': len(cls._stores['analysis']),
                'families': len(cls._stores['family']),
                'hits': cls._stats['hits'],
                'misses': cls._stats['misses'],
                'age_seconds': time.time() - cls._stats['created'],
            }
