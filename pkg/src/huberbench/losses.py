"""Convex Lipschitz losses for robust regression.

Only the Huber loss ships; the interface leaves room for other convex
Lipschitz losses (absolute, quantile) without touching the solvers.
"""

import numpy as np

from .validation import require_finite, require_positive

__all__ = ["ConvexLipschitzLoss", "HuberLoss", "huber_value", "huber_grad",
           "huber_prox", "LOSSES"]


def huber_value(u, y, gamma):
    """Huber loss of predicting ``u`` for label ``y``.

    Quadratic ``(y-u)^2 / 2`` while ``|u-y| <= gamma``, linear
    ``gamma*|y-u| - gamma^2/2`` outside; C1 across the kink.
    """
    require_positive(gamma, "gamma")
    u = require_finite(np.asarray(u, dtype=float), "u")
    y = require_finite(np.asarray(y, dtype=float), "y")
    r = u - y
    a = np.abs(r)
    out = np.where(a <= gamma, 0.5 * r * r, gamma * a - 0.5 * gamma * gamma)
    return out if out.ndim else float(out)


def huber_grad(u, y, gamma):
    """Derivative of the Huber loss in its first argument.

    Equals the residual inside the quadratic zone and saturates at
    ``+-gamma`` outside, so its magnitude never exceeds ``gamma``.
    """
    require_positive(gamma, "gamma")
    u = require_finite(np.asarray(u, dtype=float), "u")
    y = require_finite(np.asarray(y, dtype=float), "y")
    out = np.clip(u - y, -gamma, gamma)
    return out if out.ndim else float(out)


def huber_prox(v, y, step, gamma):
    """Proximal map ``argmin_z (z-v)^2/2 + step * huber(z, y)``.

    Closed form: with ``r = v - y``, the minimizer is ``y + r/(1+step)``
    when ``|r| <= (1+step)*gamma`` and ``v - step*gamma*sign(r)`` beyond.
    """
    require_positive(gamma, "gamma")
    require_positive(step, "step")
    v = require_finite(np.asarray(v, dtype=float), "v")
    y = require_finite(np.asarray(y, dtype=float), "y")
    r = v - y
    shrunk = y + r / (1.0 + step)
    linear = v - step * gamma * np.sign(r)
    out = np.where(np.abs(r) <= (1.0 + step) * gamma, shrunk, linear)
    return out if out.ndim else float(out)


class ConvexLipschitzLoss:
    """Interface for losses that are convex and Lipschitz in the prediction.

    Implementations provide elementwise ``value``, ``grad`` and ``prox``
    plus the Lipschitz constant the solvers use for step sizing.
    """

    kind = "abstract"

    def lipschitz_constant(self):
        raise NotImplementedError

    def value(self, u, y):
        raise NotImplementedError

    def grad(self, u, y):
        raise NotImplementedError

    def prox(self, v, y, step):
        raise NotImplementedError


class HuberLoss(ConvexLipschitzLoss):
    """Huber loss with threshold ``gamma``; Lipschitz constant is ``gamma``."""

    kind = "huber"

    def __init__(self, gamma=1.0):
        require_positive(gamma, "gamma")
        self.gamma = float(gamma)

    def lipschitz_constant(self):
        return self.gamma

    def value(self, u, y):
        return huber_value(u, y, self.gamma)

    def grad(self, u, y):
        return huber_grad(u, y, self.gamma)

    def prox(self, v, y, step):
        return huber_prox(v, y, step, self.gamma)

    def __repr__(self):
        return f"HuberLoss(gamma={self.gamma!r})"


LOSSES = {"huber": HuberLoss}
