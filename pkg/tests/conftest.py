from __future__ import annotations

import random

import pytest

from graphcodes.graph import Code, CodeSpec


@pytest.fixture
def rng() -> random.Random:
    return random.Random(1234)


def c2(n: int) -> CodeSpec:
    return CodeSpec(n, Code.C2)


def c3(n: int) -> CodeSpec:
    return CodeSpec(n, Code.C3)
