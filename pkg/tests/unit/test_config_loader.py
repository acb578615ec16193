"""
Unit tests for Configuration Loader module.

Tests YAML loading, environment variable substitution, and config merging.
"""

import os
import shutil
import tempfile
import textwrap
import unittest
from pathlib import Path
from unittest import mock

from fdots.core.errors import ConfigurationError
from fdots.utils.config_loader import DEFAULT_CONFIG_PATH, ConfigLoader, load_config


class TestConfigLoader(unittest.TestCase):
    """Test suite for ConfigLoader class."""

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()
        self.loader = ConfigLoader(base_path=self.temp_dir)

    def tearDown(self):
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def _create_temp_config(self, content: str, name: str = "test_config.yaml") -> str:
        config_path = os.path.join(self.temp_dir, name)
        with open(config_path, 'w') as f:
            f.write(textwrap.dedent(content))
        return config_path

    def test_load_nested_yaml(self):
        config_path = self._create_temp_config("""
        store:
          root: "fdo-store"
        generator:
          association_density: 0.3
          attrs_per_fdo: [1, 4]
        """)
        config = self.loader.load(config_path)

        self.assertEqual(config['store']['root'], "fdo-store")
        self.assertEqual(config['generator']['association_density'], 0.3)
        self.assertEqual(config['generator']['attrs_per_fdo'], [1, 4])

    def test_relative_path_uses_base_path(self):
        self._create_temp_config("cli:\n  seed: 4\n", name="relative.yaml")
        self.assertEqual(self.loader.load("relative.yaml")['cli']['seed'], 4)

    def test_env_var_substitution(self):
        config_path = self._create_temp_config('store:\n  root: "${FDOTS_TEST_ROOT}"\n')
        with mock.patch.dict(os.environ, {'FDOTS_TEST_ROOT': '/srv/store'}):
            config = self.loader.load(config_path)
        self.assertEqual(config['store']['root'], '/srv/store')

    def test_env_var_default_and_type_conversion(self):
        config_path = self._create_temp_config("""
        seed: "${FDOTS_UNSET_SEED:7}"
        density: "${FDOTS_UNSET_DENSITY:0.5}"
        progress: "${FDOTS_UNSET_PROGRESS:yes}"
        name: "${FDOTS_UNSET_NAME:store}"
        """)
        with mock.patch.dict(os.environ, {}, clear=False):
            for var in ('FDOTS_UNSET_SEED', 'FDOTS_UNSET_DENSITY', 'FDOTS_UNSET_PROGRESS', 'FDOTS_UNSET_NAME'):
                os.environ.pop(var, None)
            config = self.loader.load(config_path)

        self.assertEqual(config['seed'], 7)
        self.assertEqual(config['density'], 0.5)
        self.assertIs(config['progress'], True)
        self.assertEqual(config['name'], 'store')

    def test_unset_variable_without_default_is_kept(self):
        config_path = self._create_temp_config('root: "${FDOTS_SURELY_UNSET_VAR}"\n')
        os.environ.pop('FDOTS_SURELY_UNSET_VAR', None)
        config = self.loader.load(config_path)
        self.assertEqual(config['root'], '${FDOTS_SURELY_UNSET_VAR}')

    def test_multiple_env_vars_in_value(self):
        config_path = self._create_temp_config('root: "${FDOTS_A}/${FDOTS_B}"\n')
        with mock.patch.dict(os.environ, {'FDOTS_A': 'data', 'FDOTS_B': 'store'}):
            config = self.loader.load(config_path)
        self.assertEqual(config['root'], 'data/store')

    def test_variables_inside_lists(self):
        config_path = self._create_temp_config('ladder:\n  - "${FDOTS_RUNG:10}"\n  - 100\n')
        os.environ.pop('FDOTS_RUNG', None)
        self.assertEqual(self.loader.load(config_path)['ladder'], [10, 100])

    def test_load_nonexistent_file(self):
        with self.assertRaises(ConfigurationError):
            self.loader.load("/nonexistent/path/config.yaml")

    def test_load_invalid_yaml(self):
        config_path = self._create_temp_config("invalid: yaml: content:\n  - broken\n")
        with self.assertRaises(ConfigurationError):
            self.loader.load(config_path)

    def test_top_level_must_be_mapping(self):
        config_path = self._create_temp_config("- a\n- b\n")
        with self.assertRaises(ConfigurationError):
            self.loader.load(config_path)

    def test_empty_file(self):
        config_path = self._create_temp_config("")
        self.assertEqual(self.loader.load(config_path), {})

    def test_merge_configs(self):
        base_config = {'a': 1, 'b': {'c': 2}}
        override_config = {'b': {'c': 3, 'd': 4}, 'e': 5}

        merged = self.loader.merge_configs(base_config, override_config)

        self.assertEqual(merged, {'a': 1, 'b': {'c': 3, 'd': 4}, 'e': 5})
        self.assertEqual(base_config['b'], {'c': 2})

    def test_save_and_reload(self):
        config = {'cli': {'seed': 3, 'model': 'profile'}}
        path = self.loader.save(config, "nested/out.yaml")
        self.assertEqual(path, Path(self.temp_dir) / "nested" / "out.yaml")
        self.assertEqual(self.loader.load(path), config)

    def test_validate(self):
        schema = {'required': ['store'], 'optional': ['cli']}
        self.assertTrue(self.loader.validate({'store': {}, 'cli': {}}, schema))
        with self.assertRaises(ConfigurationError):
            self.loader.validate({'cli': {}}, schema)


class TestLoadConfigConvenience(unittest.TestCase):
    """Test suite for load_config convenience function."""

    def test_load_config_function(self):
        temp_dir = tempfile.mkdtemp()
        try:
            config_path = os.path.join(temp_dir, "test.yaml")
            with open(config_path, 'w') as f:
                f.write("test_key: test_value\n")

            config = load_config(config_path)
            self.assertEqual(config, {'test_key': 'test_value'})
        finally:
            shutil.rmtree(temp_dir)

    def test_default_configuration(self):
        self.assertTrue(DEFAULT_CONFIG_PATH.exists())
        config = load_config()
        self.assertEqual(config['cli']['seed'], 0)
        self.assertEqual(config['metrics']['sample_size'], 100)
        self.assertEqual(config['scaling']['ladder'], [10, 100, 1000, 10000])


if __name__ == '__main__':
    unittest.main()
