"""Seeded random structures.  All streams use numpy's PCG64 generator."""
from __future__ import annotations

import numpy as np

from . import type_a as ta
from . import type_b as tb
from .tensor_core import pullback_tensor, to_tensor, to_vector


def make_rng(seed) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _rot(t):
    return np.array([[np.cos(t), -np.sin(t)], [np.sin(t), np.cos(t)]])


def random_gl(rng, det_range=(0.1, 10.0), reflect_prob=0.5) -> np.ndarray:
    """R1 diag(s1, s2) R2 with log-uniform singular values, so |det| lies in det_range."""
    lo, hi = np.log(det_range[0]) / 2, np.log(det_range[1]) / 2
    s = np.exp(rng.uniform(lo, hi, 2))
    a = _rot(rng.uniform(0, 2 * np.pi)) @ np.diag(s) @ _rot(rng.uniform(0, 2 * np.pi))
    if rng.random() < reflect_prob:
        a = a @ np.diag([1.0, -1.0])
    return a


def random_gauge(rng, allow_negative=True) -> tb.GaugeTransform:
    c = np.exp(rng.uniform(-1, 1))
    if allow_negative and rng.random() < 0.5:
        c = -c
    return tb.GaugeTransform.from_effective(rng.uniform(-2, 2), c)


def normal_form_params(rng, sig):
    """(kind, x, y) for a random normal form of the given signature class."""
    if sig in ("plus", "minus"):
        return sig, rng.uniform(0.2, 2.5), rng.uniform(0.0, 3.0)
    if rng.random() < 0.5:
        x = rng.uniform(0.3, 2.5) * rng.choice([-1.0, 1.0])
        return "indef1", x, (1 + rng.uniform(0.01, 6.0)) / x
    while True:
        x, y = rng.uniform(-2.5, 2.5, 2)
        if x * y < 0.99:
            return "indef2", x, y


def normal_form(kind, x, y):
    if kind == "plus":
        return ta.gamma_plus(x, y)
    if kind == "minus":
        return ta.gamma_minus(x, y)
    if kind == "indef1":
        return ta.gamma_indef1(x, y)
    return ta.gamma_indef2(x, y)


def sample_type_a(rng, sig, n):
    """n symbols of signature class sig, each a random GL(2) pullback of a normal form."""
    out = []
    for _ in range(n):
        kind, x, y = normal_form_params(rng, sig)
        v = normal_form(kind, x, y).as_vector()
        out.append(to_vector(pullback_tensor(to_tensor(v), random_gl(rng))))
    return out


def sample_type_b(rng, n, box=2.0):
    out = []
    while len(out) < n:
        v = rng.uniform(-box, box, 6)
        if tb.membership_b(v) == "Z23B":
            out.append(v)
    return out
