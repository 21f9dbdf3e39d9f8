"""Bundled scenario configurations (TOML) and their matrix fixtures (NPY)."""
