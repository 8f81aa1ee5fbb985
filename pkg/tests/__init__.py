# Unit, acceptance and golden-file tests
