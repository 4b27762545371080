"""
Tests for the cache, configuration and logging utilities
"""

import json
import logging
import sys
from datetime import datetime, timedelta
from logging.handlers import RotatingFileHandler
from pathlib import Path

import pytest
from pythonjsonlogger.jsonlogger import JsonFormatter

sys.path.insert(0, str(Path(__file__).parent.parent))

from classgrp.compute import cache_from_config
from utils.cache import Cache
from utils.config import load_config, section
from utils.logger import configure_from, setup_logger


class TestCache:

    def test_set_and_get(self, tmp_path):
        cache = Cache(cache_dir=str(tmp_path))
        assert cache.get('quadratic:-23') is None
        cache.set('quadratic:-23', {'h': 3})
        assert cache.get('quadratic:-23') == {'h': 3}
        assert list(tmp_path.glob('*.tmp')) == []

    def test_expired_entries_are_dropped(self, tmp_path):
        cache = Cache(cache_dir=str(tmp_path), ttl_hours=1)
        cache.set('cubic:1,2,3', [1])
        path = next(tmp_path.glob('*.json'))
        data = json.loads(path.read_text())
        data['timestamp'] = (datetime.now() - timedelta(hours=2)).isoformat()
        path.write_text(json.dumps(data))
        assert cache.get('cubic:1,2,3') is None
        assert not path.exists()

    def test_unreadable_entry_is_ignored(self, tmp_path):
        cache = Cache(cache_dir=str(tmp_path))
        cache.set('k', 1)
        next(tmp_path.glob('*.json')).write_text('{not json')
        assert cache.get('k') is None

    def test_clear(self, tmp_path):
        cache = Cache(cache_dir=str(tmp_path))
        cache.set('a', 1)
        cache.set('b', 2)
        cache.clear()
        assert cache.get('a') is None
        assert list(tmp_path.glob('*.json')) == []

    def test_cache_from_config(self, tmp_path):
        assert cache_from_config(None) is None
        assert cache_from_config({'cache': {'enabled': False}}) is None
        cache = cache_from_config({'cache': {'enabled': True, 'directory': str(tmp_path), 'ttl_hours': 2}})
        assert cache.cache_dir == tmp_path
        assert cache.ttl == timedelta(hours=2)

    def test_env_directory(self, tmp_path, monkeypatch):
        monkeypatch.setenv('S4CENSUS_CACHE_DIR', str(tmp_path / 'env-cache'))
        assert Cache().cache_dir == tmp_path / 'env-cache'


class TestConfig:

    def test_load_yaml(self, tmp_path, monkeypatch):
        monkeypatch.delenv('S4CENSUS_JOBS', raising=False)
        monkeypatch.delenv('S4CENSUS_CACHE_DIR', raising=False)
        path = tmp_path / 'config.yaml'
        path.write_text('census:\n  max_disc: 500\n  jobs: 2\n')
        config = load_config(str(path))
        assert section(config, 'census') == {'max_disc': 500, 'jobs': 2}
        assert section(config, 'verify') == {}

    def test_environment_overrides(self, tmp_path, monkeypatch):
        monkeypatch.setenv('S4CENSUS_JOBS', '6')
        monkeypatch.setenv('S4CENSUS_CACHE_DIR', '/tmp/s4-cache')
        path = tmp_path / 'config.yaml'
        path.write_text('census:\n  jobs: 2\n')
        config = load_config(str(path))
        assert config['census']['jobs'] == 6
        assert config['cache']['directory'] == '/tmp/s4-cache'

    def test_missing_default_file_is_empty(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        monkeypatch.delenv('S4CENSUS_JOBS', raising=False)
        monkeypatch.delenv('S4CENSUS_CACHE_DIR', raising=False)
        assert load_config() == {}

    def test_errors(self, tmp_path):
        with pytest.raises(ValueError):
            load_config(str(tmp_path / 'missing.yaml'))
        path = tmp_path / 'list.yaml'
        path.write_text('- 1\n- 2\n')
        with pytest.raises(ValueError):
            load_config(str(path))

    def test_section_tolerates_empty_values(self):
        assert section(None, 'census') == {}
        assert section({'census': None}, 'census') == {}


class TestLogger:

    def test_setup_logger(self, tmp_path, monkeypatch):
        monkeypatch.setenv('S4CENSUS_LOG_DIR', str(tmp_path))
        logger = setup_logger('s4census.test.setup', 'DEBUG')
        assert logger.level == logging.DEBUG
        assert len(logger.handlers) == 2
        assert setup_logger('s4census.test.setup') is logger
        assert len(logger.handlers) == 2
        assert (tmp_path / 's4census.log').exists()

    def test_configure_from_updates_levels(self, tmp_path, monkeypatch):
        monkeypatch.setenv('S4CENSUS_LOG_DIR', str(tmp_path))
        monkeypatch.setenv('S4CENSUS_LOG_LEVEL', '')
        logger = setup_logger('s4census.test.configure', 'INFO')
        configure_from({'logging': {'level': 'WARNING'}})
        assert logger.level == logging.WARNING

    def test_environment_wins(self, tmp_path, monkeypatch):
        monkeypatch.setenv('S4CENSUS_LOG_DIR', str(tmp_path))
        monkeypatch.setenv('S4CENSUS_LOG_LEVEL', 'ERROR')
        logger = setup_logger('s4census.test.env')
        configure_from({'logging': {'level': 'DEBUG'}})
        assert logger.level == logging.ERROR

    def test_json_logging(self, tmp_path, monkeypatch):
        monkeypatch.setenv('S4CENSUS_LOG_DIR', str(tmp_path))
        monkeypatch.setenv('S4CENSUS_LOG_JSON', '')
        configure_from({'logging': {'json': True}})
        logger = setup_logger('s4census.test.json')
        logger.info('census written')
        for handler in logger.handlers:
            handler.flush()
        last = (tmp_path / 's4census.log').read_text().splitlines()[-1]
        assert json.loads(last)['message'] == 'census written'

    def test_json_logging_reaches_existing_loggers(self, tmp_path, monkeypatch):
        monkeypatch.setenv('S4CENSUS_LOG_DIR', str(tmp_path))
        monkeypatch.setenv('S4CENSUS_LOG_JSON', '')
        logger = setup_logger('s4census.test.json_existing')
        file_handler = next(h for h in logger.handlers if isinstance(h, RotatingFileHandler))
        assert not isinstance(file_handler.formatter, JsonFormatter)

        configure_from({'logging': {'json': True}})
        assert isinstance(file_handler.formatter, JsonFormatter)
        console = [h for h in logger.handlers if h is not file_handler]
        assert not any(isinstance(h.formatter, JsonFormatter) for h in console)


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
