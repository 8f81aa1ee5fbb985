"""
Schema Scaffold Package

A schema-driven scaffolding toolkit: code fragments for CRUD managers,
HTML entry forms, table-to-table migrations, field validation and
sanitization, and a small log4j-style logging engine.
"""

__version__ = "0.1.0"
