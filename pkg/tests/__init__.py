"""
wonderlat Test Suite

Test Organization:
- unit/: Unit tests for individual modules
- integration/: Oracle cross-checks, sweep pipeline and CLI
- e2e/: Long sweeps and degeneration chains (marked slow)
"""
