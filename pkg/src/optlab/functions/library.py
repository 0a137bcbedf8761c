"""Built-in test functions with analytic value, gradient, and Hessian.

Extended families repeat a low-dimensional block over coordinate pairs or
quadruples (block-diagonal Hessian); generalized families chain neighboring
coordinates (banded Hessian). All evaluators accept a point only; admissible
dimensions are enforced by the registry.
"""

from __future__ import annotations

import numpy as np

from optlab.functions.registry import (
    FunctionSpec,
    INDEX_RULE,
    INVERSE_DIMENSION_RULE,
    constant_rule,
    register_function,
    repeat_rule,
)

_FULL = frozenset({"value", "gradient", "hessian"})


def _pairs(x):
    return x[0::2], x[1::2]


def _pair_hessian(n, haa, hab, hbb):
    H = np.zeros((n, n))
    i = np.arange(0, n, 2)
    j = i + 1
    H[i, i] = haa
    H[i, j] = hab
    H[j, i] = hab
    H[j, j] = hbb
    return H


def ext_rosenbrock(x, wv, wg, wh):
    a, b = _pairs(x)
    r = b - a * a
    v = g = H = None
    if wv:
        v = float(np.sum(100.0 * r * r + (1.0 - a) ** 2))
    if wg:
        g = np.empty_like(x)
        g[0::2] = -400.0 * a * r - 2.0 * (1.0 - a)
        g[1::2] = 200.0 * r
    if wh:
        H = _pair_hessian(
            x.size, 1200.0 * a * a - 400.0 * b + 2.0, -400.0 * a, 200.0
        )
    return v, g, H


def gen_rosenbrock(x, wv, wg, wh):
    a, b = x[:-1], x[1:]
    r = b - a * a
    v = g = H = None
    if wv:
        v = float(np.sum(100.0 * r * r + (1.0 - a) ** 2))
    if wg:
        g = np.zeros_like(x)
        g[:-1] += -400.0 * a * r - 2.0 * (1.0 - a)
        g[1:] += 200.0 * r
    if wh:
        n = x.size
        H = np.zeros((n, n))
        i = np.arange(n - 1)
        H[i, i] += 1200.0 * a * a - 400.0 * b + 2.0
        H[i + 1, i + 1] += 200.0
        H[i, i + 1] = -400.0 * a
        H[i + 1, i] = -400.0 * a
    return v, g, H


def ext_white_holst(x, wv, wg, wh):
    a, b = _pairs(x)
    r = b - a**3
    v = g = H = None
    if wv:
        v = float(np.sum(100.0 * r * r + (1.0 - a) ** 2))
    if wg:
        g = np.empty_like(x)
        g[0::2] = -600.0 * a * a * r - 2.0 * (1.0 - a)
        g[1::2] = 200.0 * r
    if wh:
        H = _pair_hessian(
            x.size,
            -1200.0 * a * r + 1800.0 * a**4 + 2.0,
            -600.0 * a * a,
            200.0,
        )
    return v, g, H


def ext_penalty(x, wv, wg, wh):
    u = float(x @ x) - 0.25
    v = g = H = None
    if wv:
        v = float(np.sum((x[:-1] - 1.0) ** 2)) + u * u
    if wg:
        g = 4.0 * u * x
        g[:-1] += 2.0 * (x[:-1] - 1.0)
    if wh:
        n = x.size
        H = 8.0 * np.outer(x, x) + 4.0 * u * np.eye(n)
        idx = np.arange(n - 1)
        H[idx, idx] += 2.0
    return v, g, H


def perturbed_quadratic(x, wv, wg, wh):
    n = x.size
    w = np.arange(1, n + 1, dtype=float)
    s = float(x.sum())
    v = g = H = None
    if wv:
        v = float(np.sum(w * x * x)) + s * s / 100.0
    if wg:
        g = 2.0 * w * x + (2.0 / 100.0) * s
    if wh:
        H = np.full((n, n), 2.0 / 100.0)
        idx = np.arange(n)
        H[idx, idx] += 2.0 * w
    return v, g, H


def raydan1(x, wv, wg, wh):
    n = x.size
    w = np.arange(1, n + 1, dtype=float) / 10.0
    e = np.exp(x)
    v = g = H = None
    if wv:
        v = float(np.sum(w * (e - x)))
    if wg:
        g = w * (e - 1.0)
    if wh:
        H = np.diag(w * e)
    return v, g, H


def raydan2(x, wv, wg, wh):
    e = np.exp(x)
    v = g = H = None
    if wv:
        v = float(np.sum(e - x))
    if wg:
        g = e - 1.0
    if wh:
        H = np.diag(e)
    return v, g, H


def diagonal1(x, wv, wg, wh):
    n = x.size
    w = np.arange(1, n + 1, dtype=float)
    e = np.exp(x)
    v = g = H = None
    if wv:
        v = float(np.sum(e - w * x))
    if wg:
        g = e - w
    if wh:
        H = np.diag(e)
    return v, g, H


def ext_tridiagonal1(x, wv, wg, wh):
    a, b = _pairs(x)
    u = a + b - 3.0
    w = a - b + 1.0
    v = g = H = None
    if wv:
        v = float(np.sum(u * u + w**4))
    if wg:
        g = np.empty_like(x)
        g[0::2] = 2.0 * u + 4.0 * w**3
        g[1::2] = 2.0 * u - 4.0 * w**3
    if wh:
        H = _pair_hessian(
            x.size, 2.0 + 12.0 * w * w, 2.0 - 12.0 * w * w, 2.0 + 12.0 * w * w
        )
    return v, g, H


def ext_himmelblau(x, wv, wg, wh):
    a, b = _pairs(x)
    u = a * a + b - 11.0
    w = a + b * b - 7.0
    v = g = H = None
    if wv:
        v = float(np.sum(u * u + w * w))
    if wg:
        g = np.empty_like(x)
        g[0::2] = 4.0 * a * u + 2.0 * w
        g[1::2] = 2.0 * u + 4.0 * b * w
    if wh:
        H = _pair_hessian(
            x.size,
            4.0 * u + 8.0 * a * a + 2.0,
            4.0 * a + 4.0 * b,
            2.0 + 4.0 * w + 8.0 * b * b,
        )
    return v, g, H


def quadratic_qf1(x, wv, wg, wh):
    n = x.size
    w = np.arange(1, n + 1, dtype=float)
    v = g = H = None
    if wv:
        v = 0.5 * float(np.sum(w * x * x)) - float(x[-1])
    if wg:
        g = w * x
        g[-1] -= 1.0
    if wh:
        H = np.diag(w)
    return v, g, H


def ext_powell(x, wv, wg, wh):
    p, q, r, s = x[0::4], x[1::4], x[2::4], x[3::4]
    u1 = p + 10.0 * q
    u2 = r - s
    u3 = q - 2.0 * r
    u4 = p - s
    v = g = H = None
    if wv:
        v = float(np.sum(u1 * u1 + 5.0 * u2 * u2 + u3**4 + 10.0 * u4**4))
    if wg:
        g = np.empty_like(x)
        g[0::4] = 2.0 * u1 + 40.0 * u4**3
        g[1::4] = 20.0 * u1 + 4.0 * u3**3
        g[2::4] = 10.0 * u2 - 8.0 * u3**3
        g[3::4] = -10.0 * u2 - 40.0 * u4**3
    if wh:
        n = x.size
        H = np.zeros((n, n))
        i = np.arange(0, n, 4)
        u3sq = 12.0 * u3 * u3
        u4sq = 120.0 * u4 * u4
        H[i, i] = 2.0 + u4sq
        H[i, i + 1] = H[i + 1, i] = 20.0
        H[i, i + 3] = H[i + 3, i] = -u4sq
        H[i + 1, i + 1] = 200.0 + u3sq
        H[i + 1, i + 2] = H[i + 2, i + 1] = -2.0 * u3sq
        H[i + 2, i + 2] = 10.0 + 4.0 * u3sq
        H[i + 2, i + 3] = H[i + 3, i + 2] = -10.0
        H[i + 3, i + 3] = 10.0 + u4sq
    return v, g, H


def _register_builtins() -> None:
    entries = [
        (
            FunctionSpec(
                "ExtRosenbrock", 2, "even", _FULL,
                repeat_rule(-1.2, 1.0), 100, 0.0, "block-2",
            ),
            ext_rosenbrock,
        ),
        (
            FunctionSpec(
                "GenRosenbrock", 2, "any", _FULL,
                repeat_rule(-1.2, 1.0), 100, 0.0, "tridiagonal",
            ),
            gen_rosenbrock,
        ),
        (
            FunctionSpec(
                "ExtWhiteHolst", 2, "even", _FULL,
                repeat_rule(-1.2, 1.0), 100, 0.0, "block-2",
            ),
            ext_white_holst,
        ),
        (
            FunctionSpec(
                "ExtPenalty", 2, "any", _FULL,
                INDEX_RULE, 100, None, "dense",
            ),
            ext_penalty,
        ),
        (
            FunctionSpec(
                "PerturbedQuadratic", 1, "any", _FULL,
                constant_rule(0.5), 100, 0.0, "dense",
            ),
            perturbed_quadratic,
        ),
        (
            FunctionSpec(
                "Raydan1", 1, "any", _FULL,
                constant_rule(1.0), 100, None, "diagonal",
            ),
            raydan1,
        ),
        (
            FunctionSpec(
                "Raydan2", 1, "any", _FULL,
                constant_rule(1.0), 100, None, "diagonal",
            ),
            raydan2,
        ),
        (
            FunctionSpec(
                "Diagonal1", 1, "any", _FULL,
                INVERSE_DIMENSION_RULE, 100, None, "diagonal",
            ),
            diagonal1,
        ),
        (
            FunctionSpec(
                "ExtTridiagonal1", 2, "even", _FULL,
                constant_rule(2.0), 100, 0.0, "block-2",
            ),
            ext_tridiagonal1,
        ),
        (
            FunctionSpec(
                "ExtHimmelblau", 2, "even", _FULL,
                constant_rule(1.0), 100, 0.0, "block-2",
            ),
            ext_himmelblau,
        ),
        (
            FunctionSpec(
                "QuadraticQF1", 1, "any", _FULL,
                constant_rule(1.0), 100, None, "diagonal",
            ),
            quadratic_qf1,
        ),
        (
            FunctionSpec(
                "ExtPowell", 4, "multiple-of-4", _FULL,
                repeat_rule(3.0, -1.0, 0.0, 1.0), 100, 0.0, "block-4",
            ),
            ext_powell,
        ),
    ]
    for spec, evaluator in entries:
        register_function(spec, evaluator)
