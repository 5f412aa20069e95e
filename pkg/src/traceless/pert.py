"""Holonomy-perturbed representation circles.

The reduced circle ``rho(beta)`` comes from perturbing along one curve ``P``
with ``nu = eps f(beta)``.  The unreduced circles ``rho_1, rho_2`` use two
curves with the functions ``eps sin`` and ``2 eps sin``.

A second family of solutions of the reduced equations exists: ``nu``
replaced by ``pi - nu`` and the images of ``b, c`` rotated accordingly.  It is
the conjugate by ``i`` of ``rho(2 pi - beta)``, so it gives nothing new and is
not built here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Literal

import numpy as np

from . import quat
from .errors import InvalidPerturbation, PerturbationTooLarge, UnsupportedPerturbationFunction
from .pillowcase import TWO_PI, PillowPath, sample_curve
from .quat import Quaternion

DEFAULT_EPSILON = 0.1
_GRID = 4096

Which = Literal["reduced", "unreduced1", "unreduced2"]


def _vectorize(f: Callable) -> Callable[[np.ndarray], np.ndarray]:
    try:
        probe = np.asarray(f(np.linspace(0.0, 1.0, 3)), dtype=float)
        if probe.shape == (3,):
            return f
    except Exception:
        pass
    return np.vectorize(lambda v: float(f(float(v))), otypes=[float])


@dataclass(frozen=True)
class PerturbationData:
    """``(eps, f)`` with ``f`` odd and 2 pi periodic; ``nu = eps f(beta)``."""

    epsilon: float = DEFAULT_EPSILON
    f: Callable = field(default=np.sin, compare=False)
    name: str = "sin"

    def __post_init__(self) -> None:
        if self.epsilon < 0:
            raise InvalidPerturbation("epsilon must be nonnegative")
        object.__setattr__(self, "f", _vectorize(self.f))

    def nu(self, beta):
        return self.epsilon * self.f(beta)

    @property
    def sup_f(self) -> float:
        grid = np.linspace(0.0, TWO_PI, _GRID, endpoint=False)
        return float(np.max(np.abs(self.f(grid))))

    @property
    def sup_df(self) -> float:
        """Numerical sup |f'| on a 4096-point grid."""
        grid = np.linspace(0.0, TWO_PI, _GRID + 1)
        vals = self.f(grid)
        return float(np.max(np.abs(np.diff(vals)))) / (grid[1] - grid[0])

    def is_sine(self, tol: float = 1e-12) -> bool:
        grid = np.linspace(0.0, TWO_PI, 257)
        return bool(np.max(np.abs(self.f(grid) - np.sin(grid))) <= tol)

    def validate(self) -> None:
        """Check oddness, periodicity, nonvanishing and the smallness bound."""
        grid = np.linspace(-TWO_PI, TWO_PI, 2 * 1024 + 1)
        fv = self.f(grid)
        if abs(float(self.f(np.array([0.0]))[0])) > 1e-10:
            raise InvalidPerturbation("f(0) must vanish")
        if np.max(np.abs(fv + self.f(-grid))) > 1e-10:
            raise InvalidPerturbation("f must be odd")
        if np.max(np.abs(fv - self.f(grid + TWO_PI))) > 1e-10:
            raise InvalidPerturbation("f must be 2 pi periodic")
        away = np.abs(grid / math.pi - np.round(grid / math.pi)) > 1e-3
        if np.any(np.abs(fv[away]) <= 1e-12):
            raise InvalidPerturbation("f must not vanish away from multiples of pi")
        bound = self.epsilon * self.sup_f
        if bound >= math.pi / 2:
            raise PerturbationTooLarge(f"eps * sup|f| = {bound:.6g} must stay below pi/2")


SINE = PerturbationData()


@dataclass(frozen=True)
class PerturbedRep:
    """One point of a perturbed circle, stored by its quaternion images.

    The representative is the one with ``a -> i`` (reduced) or ``m -> i``
    (unreduced).
    """

    beta: float
    which: Which
    epsilon: float
    images: dict = field(compare=False)
    tau: float = 0.0

    def __getattr__(self, name: str) -> Quaternion:
        images = object.__getattribute__(self, "images")
        if name in images:
            return images[name]
        raise AttributeError(name)

    def restriction(self) -> tuple[float, float]:
        """Lift of the pillowcase image of this point."""
        nu = self.images["_nu"]
        shift = -self.tau if self.which != "reduced" else 0.0
        return (shift + math.pi / 2 + self.beta + nu, shift + math.pi / 2 + self.beta - nu)


def _reduced_images(beta: float, nu: float) -> dict:
    return {
        "a": quat.I,
        "b": quat.exp_k_i(math.pi / 2 + beta + nu),
        "c": quat.exp_k_i(math.pi / 2 + beta - nu),
        "d": quat.exp_k_i(-2.0 * nu),
        "h": quat.mul(-quat.J, quat.exp_k(-nu)),
        "p": quat.exp_k(nu),
        "w": -quat.ONE,
        "_nu": nu,
    }


def rho(beta: float, pert: PerturbationData = SINE) -> PerturbedRep:
    """The reduced perturbed representation at ``beta``."""
    pert.validate()
    nu = float(pert.nu(np.array([beta]))[0])
    return PerturbedRep(float(beta), "reduced", pert.epsilon, _reduced_images(beta, nu))


def _reduced_lift(pert: PerturbationData):
    def curve(beta: np.ndarray) -> np.ndarray:
        beta = np.asarray(beta, dtype=float)
        nu = pert.nu(beta)
        return np.stack([beta + nu + math.pi / 2, beta - nu + math.pi / 2], axis=-1)

    return curve


def rho_image(pert: PerturbationData = SINE, samples: int = 2048) -> PillowPath:
    """Closed path ``beta -> (beta + eps f + pi/2, beta - eps f + pi/2)``."""
    if samples < 16:
        raise ValueError("samples must be at least 16")
    pert.validate()
    return sample_curve(_reduced_lift(pert), 0.0, TWO_PI, samples, closed=True, label="rho")


def tau_branch(beta, branch: int):
    """Solutions of ``sin beta = -2 sin tau``: branch 1 near 0, branch 2 near pi."""
    t1 = np.arcsin(-0.5 * np.sin(beta))
    if branch == 1:
        return t1 if np.ndim(t1) else float(t1)
    if branch == 2:
        t2 = math.pi - t1
        return t2 if np.ndim(t2) else float(t2)
    raise ValueError("branch must be 1 or 2")


def _require_sine(pert: PerturbationData) -> None:
    if not pert.is_sine():
        raise UnsupportedPerturbationFunction("the unreduced circles are built for f = sin only")


def rho_unreduced(beta: float, branch: int, pert: PerturbationData = SINE) -> PerturbedRep:
    """Point of the unreduced circle ``rho_branch`` at ``beta``.

    Built from the reduced solution together with ``m -> e^{tau k} i``,
    ``n -> e^{(tau - 2 eps sin beta) k} i`` and ``p_2 -> e^{-2 eps sin(tau) k}``,
    then conjugated by ``e^{-tau k / 2}`` so that ``m -> i``.
    """
    _require_sine(pert)
    pert.validate()
    eps = pert.epsilon
    nu = eps * math.sin(beta)
    tau = float(tau_branch(beta, branch))
    base = _reduced_images(beta, nu)
    base["m"] = quat.exp_k_i(tau)
    base["n"] = quat.exp_k_i(tau - 2.0 * nu)
    base["p2"] = quat.exp_k(-2.0 * eps * math.sin(tau))
    g = quat.exp_k(-tau / 2.0)
    images = {k: (quat.conjugate_by(g, v) if isinstance(v, Quaternion) else v) for k, v in base.items()}
    which: Which = "unreduced1" if branch == 1 else "unreduced2"
    return PerturbedRep(float(beta), which, eps, images, tau=tau)


def _unreduced_lift(branch: int, eps: float):
    def curve(beta: np.ndarray) -> np.ndarray:
        beta = np.asarray(beta, dtype=float)
        tau = tau_branch(beta, branch)
        nu = eps * np.sin(beta)
        base = -tau + math.pi / 2 + beta
        return np.stack([base + nu, base - nu], axis=-1)

    return curve


def rho_unreduced_image(branch: int, pert: PerturbationData = SINE, samples: int = 2048) -> PillowPath:
    """Closed path of the pillowcase image of ``rho_branch``."""
    if samples < 16:
        raise ValueError("samples must be at least 16")
    _require_sine(pert)
    pert.validate()
    return sample_curve(
        _unreduced_lift(branch, pert.epsilon), 0.0, TWO_PI, samples, closed=True, label=f"rho{branch}"
    )


def _res(x: Quaternion, y: Quaternion) -> float:
    return quat.distance(x, y)


def _membership(q: Quaternion) -> float:
    return max(abs(q.a), abs(q.norm() - 1.0))


def verify_relations(rep: PerturbedRep) -> float:
    """Largest residual over the defining relations of ``rep``.

    Reduced: ``c = p' b p``, ``d = c' b a``, ``[b h, p] = 1``,
    ``[a p', h] = (h a) w (a' h')`` (primes are inverses), membership of
    ``a, b, c, d, h`` in C(i), ``w = -1`` and the perturbation condition
    ``b h -> e^{beta k}``, ``p -> e^{nu k}``.

    Unreduced reps additionally check ``d = p2' a p2``, ``n = p2' m p2``,
    ``[a' m, p2] = 1``, ``b m = c n``, the ``P_2`` perturbation condition and
    ``sin beta = -2 sin tau``.
    """
    a, b, c, d, h, p, w = (rep.images[k] for k in "abcdhpw")
    mul = quat.mul
    inv = Quaternion.inverse
    r = [
        _res(c, mul(mul(inv(p), b), p)),
        _res(d, mul(mul(inv(c), b), a)),
        _res(quat.commutator(mul(b, h), p), quat.ONE),
        _res(quat.commutator(mul(a, inv(p)), h), mul(mul(mul(h, a), w), mul(inv(a), inv(h)))),
        _res(w, -quat.ONE),
    ]
    r += [_membership(q) for q in (a, b, c, d, h)]

    # Perturbation condition: longitude b h has angle beta about the axis of p.
    nu = rep.images["_nu"]
    if rep.which == "reduced":
        axis_rot = quat.ONE
    else:
        axis_rot = quat.exp_k(-rep.tau / 2.0)
    lam = quat.conjugate_by(axis_rot, quat.exp_k(rep.beta))
    r.append(_res(mul(b, h), lam))
    r.append(_res(p, quat.conjugate_by(axis_rot, quat.exp_k(nu))))

    if rep.which != "reduced":
        m, n, p2 = rep.images["m"], rep.images["n"], rep.images["p2"]
        r += [
            _res(d, mul(mul(inv(p2), a), p2)),
            _res(n, mul(mul(inv(p2), m), p2)),
            _res(quat.commutator(mul(inv(a), m), p2), quat.ONE),
            _res(mul(b, m), mul(c, n)),
            _membership(m),
            _membership(n),
            _res(mul(inv(a), m), quat.exp_k(-rep.tau)),
            _res(p2, quat.exp_k(-2.0 * rep.epsilon * math.sin(rep.tau))),
            abs(math.sin(rep.beta) + 2.0 * math.sin(rep.tau)),
        ]
    return float(max(r))
