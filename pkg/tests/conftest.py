import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rla import corpus
from rla.env import EnvAlgebra

_ENV_CACHE = {}


@pytest.fixture
def build_env():
    """Cached EnvAlgebra per corpus entry; algebras are immutable and the
    straightening caches only grow, so sharing across tests is safe."""
    def get(name: str) -> EnvAlgebra:
        if name not in _ENV_CACHE:
            _ENV_CACHE[name] = EnvAlgebra(corpus.build(name))
        return _ENV_CACHE[name]
    return get
