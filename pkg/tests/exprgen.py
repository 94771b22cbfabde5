"""Random expression trees for property tests."""

import random

from waringpde.expr import FUNCTIONS, Add, Const, Func, Mul, Neg, PowInt, Var


def random_expr(rng: random.Random, n: int, depth: int):
    """Tree of depth at most ``depth`` over ``z1..zn`` with O(1) constants."""
    if depth <= 1 or rng.random() < 0.25:
        if rng.random() < 0.6:
            return Var(rng.randrange(n))
        return Const(complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)))
    kind = rng.choice(["add", "mul", "neg", "pow", "func", "func"])
    sub = lambda: random_expr(rng, n, depth - 1)  # noqa: E731
    if kind == "add":
        return Add(sub(), sub())
    if kind == "mul":
        return Mul(sub(), sub())
    if kind == "neg":
        return Neg(sub())
    if kind == "pow":
        return PowInt(sub(), rng.randrange(4))
    return Func(rng.choice(FUNCTIONS), sub())


def random_point(rng: random.Random, n: int, radius: float = 1.0):
    return tuple(complex(rng.uniform(-radius, radius), rng.uniform(-radius, radius)) / 1.5
                 for _ in range(n))
