# Test package for funtf
