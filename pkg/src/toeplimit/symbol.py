"""Laurent polynomial symbols b(t) = sum_{n=-r}^{s} beta_n t^n."""
from __future__ import annotations

import json
import math
from typing import Iterable, Mapping

import numpy as np

from .errors import DomainError

__all__ = ["LaurentSymbol", "RhoInterval", "eval_symbol", "scaled", "coeff_sup_bound",
           "second_derivative_bound", "q_polynomial", "derivative_polynomial"]


class LaurentSymbol:
    """Immutable sparse Laurent polynomial.

    ``terms`` maps integer exponents to complex coefficients. Zero coefficients
    are dropped. With ``banded=True`` (the default) the symbol must contain at
    least one negative and one positive power, so that ``r >= 1`` and ``s >= 1``;
    ``banded=False`` admits any nonzero Laurent polynomial (useful for b = t).
    """

    __slots__ = ("_exps", "_coefs", "_banded")

    def __init__(self, terms: Mapping[int, complex] | Iterable[tuple[int, complex]], *,
                 banded: bool = True):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, complex] = {}
        for n, c in items:
            if int(n) != n:
                raise DomainError(f"exponent {n!r} is not an integer")
            c = complex(c)
            if not (math.isfinite(c.real) and math.isfinite(c.imag)):
                raise DomainError(f"coefficient of t^{n} is not finite")
            acc[int(n)] = acc.get(int(n), 0j) + c
        acc = {n: c for n, c in acc.items() if c != 0}
        if not acc:
            raise DomainError("symbol has no nonzero coefficient")
        exps = sorted(acc)
        if banded and (exps[0] >= 0 or exps[-1] <= 0):
            raise DomainError("banded symbol needs both negative and positive powers (r, s >= 1)")
        self._exps = tuple(exps)
        self._coefs = tuple(acc[n] for n in exps)
        self._banded = banded

    # -- basic accessors
    @property
    def terms(self) -> dict[int, complex]:
        return dict(zip(self._exps, self._coefs))

    @property
    def r(self) -> int:
        return -self._exps[0]

    @property
    def s(self) -> int:
        return self._exps[-1]

    @property
    def banded(self) -> bool:
        return self._banded

    @property
    def exponents(self) -> np.ndarray:
        return np.array(self._exps, dtype=np.int64)

    @property
    def coefficients(self) -> np.ndarray:
        return np.array(self._coefs, dtype=np.complex128)

    def coefficient(self, n: int) -> complex:
        try:
            return self._coefs[self._exps.index(n)]
        except ValueError:
            return 0j

    def dense(self) -> np.ndarray:
        """Dense coefficients, index k holds beta_{k - r}."""
        out = np.zeros(self.s + self.r + 1, dtype=np.complex128)
        out[self.exponents + self.r] = self.coefficients
        return out

    def __eq__(self, other):
        if not isinstance(other, LaurentSymbol):
            return NotImplemented
        return self._exps == other._exps and self._coefs == other._coefs

    def __hash__(self):
        return hash((self._exps, self._coefs))

    def __repr__(self):
        body = " + ".join(f"({c:g})t^{n}" for n, c in zip(self._exps, self._coefs))
        return f"LaurentSymbol({body})"

    # -- operations
    def __call__(self, z):
        return eval_symbol(self, z)

    def scaled(self, rho: float) -> "LaurentSymbol":
        return scaled(self, rho)

    # -- serialization
    def to_json(self) -> dict:
        return {"terms": [{"n": int(n), "re": float(c.real), "im": float(c.imag)}
                          for n, c in zip(self._exps, self._coefs)]}

    @classmethod
    def from_json(cls, data, *, banded: bool = True) -> "LaurentSymbol":
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        try:
            raw = data["terms"]
            seen = set()
            terms = []
            for t in raw:
                n = t["n"]
                if not isinstance(n, int) or isinstance(n, bool):
                    raise DomainError(f"exponent {n!r} is not an integer")
                if n in seen:
                    raise DomainError(f"duplicate exponent {n}")
                seen.add(n)
                terms.append((n, complex(float(t.get("re", 0.0)), float(t.get("im", 0.0)))))
        except (KeyError, TypeError) as exc:
            raise DomainError(f"malformed symbol JSON: {exc}") from exc
        return cls(terms, banded=banded)


class RhoInterval:
    """Closed interval [rho_l, rho_h] with 0 < rho_l <= 1 <= rho_h."""

    __slots__ = ("rho_l", "rho_h")

    def __init__(self, rho_l: float, rho_h: float):
        rho_l, rho_h = float(rho_l), float(rho_h)
        if not (0 < rho_l <= 1 <= rho_h < math.inf):
            raise DomainError(f"invalid rho interval [{rho_l}, {rho_h}]")
        self.rho_l = rho_l
        self.rho_h = rho_h

    def __iter__(self):
        return iter((self.rho_l, self.rho_h))

    def __repr__(self):
        return f"RhoInterval({self.rho_l!r}, {self.rho_h!r})"


def eval_symbol(b: LaurentSymbol, z):
    """Evaluate b at nonzero z (scalar or array).

    The polynomial part sum_{n>=0} and the part in 1/z are each evaluated by
    Horner's rule.
    """
    zz = np.asarray(z, dtype=np.complex128)
    if np.any(zz == 0):
        raise DomainError("symbol evaluated at z = 0")
    d = b.dense()
    r = b.r
    if r >= 0:
        pos = d[r:]
        neg = d[:r][::-1]  # beta_{-1}, beta_{-2}, ...
    else:
        pos = np.concatenate([np.zeros(-r, dtype=np.complex128), d])
        neg = d[:0]
    acc = np.zeros_like(zz)
    for c in pos[::-1]:
        acc = acc * zz + c
    if len(neg):
        w = 1.0 / zz
        accn = np.zeros_like(zz)
        for c in neg[::-1]:
            accn = accn * w + c
        acc = acc + accn * w
    if np.ndim(z) == 0:
        return complex(acc)
    return acc


def scaled(b: LaurentSymbol, rho: float) -> LaurentSymbol:
    """b_rho(t) = b(rho t)."""
    rho = float(rho)
    if not rho > 0 or not math.isfinite(rho):
        raise DomainError("rho must be positive and finite")
    return LaurentSymbol([(n, c * rho ** n) for n, c in zip(b._exps, b._coefs)], banded=b.banded)


def coeff_sup_bound(b: LaurentSymbol) -> float:
    """K' = sum |beta_n|, an upper bound for sup over the unit circle of |b|."""
    return float(np.sum(np.abs(b.coefficients)))


def second_derivative_bound(b: LaurentSymbol, rho: float, mode: str = "rigorous",
                            samples: int = 8192) -> float:
    """Bound for sup_v |x''(v)| + |y''(v)| where x + iy = b(rho e^{iv}).

    ``rigorous`` returns 2 sum n^2 |beta_n| rho^n. ``sampled`` returns 1.2 times
    the maximum over a uniform grid of ``samples`` points.
    """
    rho = float(rho)
    if not rho > 0 or not math.isfinite(rho):
        raise DomainError("rho must be positive and finite")
    n = b.exponents.astype(float)
    mag = np.abs(b.coefficients) * rho ** n
    if mode == "rigorous":
        return float(2.0 * np.sum(n * n * mag))
    if mode == "sampled":
        v = np.arange(samples) * (2 * np.pi / samples)
        amp = -(n * n) * b.coefficients * rho ** n
        d2 = np.exp(1j * np.outer(v, n)) @ amp
        return float(1.2 * np.max(np.abs(d2.real) + np.abs(d2.imag)))
    raise DomainError(f"unknown bound mode {mode!r}")


def _require_banded(b: LaurentSymbol):
    if b.r < 1 or b.s < 1:
        raise DomainError("operation needs r >= 1 and s >= 1")


def q_polynomial(b: LaurentSymbol, lam: complex) -> np.ndarray:
    """Ascending coefficients of z^r (b(z) - lam), degree r + s."""
    _require_banded(b)
    c = b.dense()
    c[b.r] -= complex(lam)
    return c


def derivative_polynomial(b: LaurentSymbol) -> np.ndarray:
    """Ascending coefficients of z^{r+1} b'(z)."""
    _require_banded(b)
    c = np.zeros(b.r + b.s + 1, dtype=np.complex128)
    c[b.exponents + b.r] = b.exponents * b.coefficients
    return c
