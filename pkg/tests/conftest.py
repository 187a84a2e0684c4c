import os

import pytest

RUN_LONG = os.environ.get("DOMINOCELLS_LONG") == "1"

long_test = pytest.mark.skipif(
    not RUN_LONG, reason="set DOMINOCELLS_LONG=1 to run long checks"
)
