"""
Test Package Structure

Verifies that all modules can be imported successfully.
"""

import importlib

import pytest


class TestPackageStructure:
    """Test that all package modules can be imported."""

    def test_import_fdots_main(self):
        import fdots

        assert fdots.__version__ == "0.3.0"
        assert hasattr(fdots, "create_engine")
        assert hasattr(fdots, "RegistryStore")

    @pytest.mark.parametrize(
        "module",
        [
            "fdots.core",
            "fdots.registries",
            "fdots.engines",
            "fdots.graph",
            "fdots.metrics",
            "fdots.interop",
            "fdots.cli",
            "fdots.utils",
            "fdots.__main__",
        ],
    )
    def test_import_submodule(self, module):
        assert importlib.import_module(module) is not None

    def test_every_model_has_an_engine(self):
        from fdots.engines import EngineFactory

        assert sorted(EngineFactory.registered_models()) == ["attribute", "profile", "record"]


class TestModuleAttributes:
    """Test that modules have expected attributes."""

    def test_fdots_main_attributes(self):
        import fdots

        assert hasattr(fdots, "__author__")
        assert fdots.__license__ == "Apache 2.0"

    def test_fdots_all_exports(self):
        import fdots

        assert isinstance(fdots.__all__, list)
        missing = [name for name in fdots.__all__ if not hasattr(fdots, name)]
        assert missing == []


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
