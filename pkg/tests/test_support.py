# shared between conftest and the acceptance tests
ACCEPTANCE_LINES = []
