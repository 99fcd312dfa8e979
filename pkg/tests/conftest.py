import random

from solvlie.linalg import Matrix


def random_invertible(spec, n, rng: random.Random) -> Matrix:
    pool = list(spec.elements()) if spec.is_finite else None
    while True:
        if pool:
            m = Matrix(spec, [[rng.choice(pool) for _ in range(n)] for _ in range(n)])
        else:
            m = Matrix(spec, [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])
        if m.is_invertible():
            return m


def phi_from_columns(spec, *cols) -> Matrix:
    return Matrix.from_columns(spec, [[spec.element(c) for c in col] for col in cols])
