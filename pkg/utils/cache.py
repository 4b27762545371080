"""
File-based cache for class-group computations
"""

import json
import hashlib
import os
import tempfile
from pathlib import Path
from datetime import datetime, timedelta
from typing import Any, Optional

from utils.logger import setup_logger

logger = setup_logger(__name__)

DEFAULT_CACHE_DIR = "data/cache"


class Cache:
    """Simple file-based JSON cache with optional TTL.

    Entries are written atomically (temp file + rename) so that census
    workers running in separate processes can share one directory.
    """

    def __init__(self, cache_dir: Optional[str] = None, ttl_hours: Optional[int] = None):
        self.cache_dir = Path(cache_dir or os.getenv('S4CENSUS_CACHE_DIR') or DEFAULT_CACHE_DIR)
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        self.ttl = timedelta(hours=ttl_hours) if ttl_hours else None

    def _get_cache_key(self, key: str) -> str:
        """Generate cache file name from key"""
        return hashlib.md5(key.encode()).hexdigest()

    def _path(self, key: str) -> Path:
        return self.cache_dir / f"{self._get_cache_key(key)}.json"

    def get(self, key: str) -> Optional[Any]:
        """Get cached value if present and not expired"""
        cache_file = self._path(key)

        if not cache_file.exists():
            return None

        try:
            with open(cache_file, 'r') as f:
                data = json.load(f)

            if data.get('key') != key:
                logger.warning(f"Cache key collision for {key}")
                return None

            if self.ttl is not None:
                cached_time = datetime.fromisoformat(data['timestamp'])
                if datetime.now() - cached_time > self.ttl:
                    cache_file.unlink(missing_ok=True)
                    return None

            return data['value']

        except (json.JSONDecodeError, KeyError, ValueError, OSError) as e:
            logger.debug(f"Ignoring unreadable cache entry {cache_file.name}: {e}")
            return None

    def set(self, key: str, value: Any) -> None:
        """Cache a value"""
        data = {
            'timestamp': datetime.now().isoformat(),
            'key': key,
            'value': value
        }

        fd, tmp_name = tempfile.mkstemp(dir=self.cache_dir, suffix='.tmp')
        try:
            with os.fdopen(fd, 'w') as f:
                json.dump(data, f, default=str)
            os.replace(tmp_name, self._path(key))
        except OSError as e:
            logger.warning(f"Could not write cache entry for {key}: {e}")
            Path(tmp_name).unlink(missing_ok=True)

    def clear(self) -> None:
        """Clear all cache files"""
        for cache_file in self.cache_dir.glob("*.json"):
            cache_file.unlink()
