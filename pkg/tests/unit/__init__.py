# Unit tests for the Schema Scaffold engine and CLI
