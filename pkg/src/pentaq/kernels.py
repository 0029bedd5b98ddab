"""The four B building blocks of the pentagon identities, plus balanced
parameter containers.

Each identity couples three kernel factors on its left side to two on its
right, under a balancing constraint on the continuous parameters and a
zero-sum constraint on the integer spins.  The containers here enforce those
constraints by construction (the last component is solved for), carry the
pole-separation invariants, and serialize to plain dictionaries so that
verification runs are reproducible from record files.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .special_functions import (
    DEFAULT_POLICY,
    ModularPair,
    Nome,
    PoleError,
    TruncationPolicy,
    log_gamma,
    log_hyperbolic_gamma,
    qpoch_inf,
)

__all__ = [
    "b_hyp",
    "b_idx",
    "b_gamma_disc",
    "log_b_gamma_disc",
    "b_beta",
    "HyperbolicParams",
    "IndexParams",
    "GammaParams",
    "BetaParams",
    "sample_hyperbolic",
    "sample_index",
    "sample_gamma",
    "sample_beta",
]


# ---------------------------------------------------------------------------
# kernels
# ---------------------------------------------------------------------------

def b_hyp(x, y, omega: ModularPair,
          policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Hyperbolic kernel gamma2(x) gamma2(y) / gamma2(x + y), in log-space."""
    log_val = (log_hyperbolic_gamma(x, omega, policy)
               + log_hyperbolic_gamma(y, omega, policy)
               - log_hyperbolic_gamma(x + y, omega, policy))
    return complex(np.exp(log_val))


def b_idx(a, n: int, b, m: int, q,
          policy: TruncationPolicy = DEFAULT_POLICY) -> complex:
    """Index kernel: three q-Pochhammer ratios times a^{m/2} b^{n/2}.

        (q^{1+n/2}/a; q)   (q^{1+m/2}/b; q)   (q^{(n+m)/2} ab; q)
        ---------------- * ---------------- * --------------------- a^{m/2} b^{n/2}
        (q^{n/2} a;  q)    (q^{m/2} b;  q)    (q^{1+(n+m)/2}/(ab); q)

    Fractional powers use the principal branch; sampled parameters live near
    the positive real axis where the branch is unambiguous.
    """
    qv = q.q if isinstance(q, Nome) else complex(q)
    a = complex(a)
    b = complex(b)

    def ratio(num_arg, den_arg):
        den = qpoch_inf(den_arg, qv, policy)
        if abs(den) < 1e-280:
            raise PoleError(f"vanishing Pochhammer factor at {den_arg}")
        return qpoch_inf(num_arg, qv, policy) / den

    val = ratio(qv ** (1 + n / 2) / a, qv ** (n / 2) * a)
    val *= ratio(qv ** (1 + m / 2) / b, qv ** (m / 2) * b)
    val *= ratio(qv ** ((n + m) / 2) * a * b, qv ** (1 + (n + m) / 2) / (a * b))
    return complex(val * a ** (m / 2) * b ** (n / 2))


def log_b_gamma_disc(a, n: int, b, m: int) -> complex:
    """log of the discrete gamma kernel; array-capable in a, b."""
    return (log_gamma(np.asarray(a, dtype=complex) + n / 2)
            - log_gamma(1 - np.asarray(a, dtype=complex) + n / 2)
            + log_gamma(np.asarray(b, dtype=complex) + m / 2)
            - log_gamma(1 - np.asarray(b, dtype=complex) + m / 2)
            + log_gamma(1 - np.asarray(a, dtype=complex)
                        - np.asarray(b, dtype=complex) + (n + m) / 2)
            - log_gamma(np.asarray(a, dtype=complex)
                        + np.asarray(b, dtype=complex) + (n + m) / 2))


def b_gamma_disc(a, n: int, b, m: int):
    """Discrete gamma kernel

        Gamma(a+n/2) Gamma(b+m/2) Gamma(1-a-b+(n+m)/2)
        -----------------------------------------------
        Gamma(1-a+n/2) Gamma(1-b+m/2) Gamma(a+b+(n+m)/2)

    Raises PoleError naming the offending factor when any gamma argument is
    a nonpositive integer.
    """
    labels = {
        "Gamma(a+n/2)": a + n / 2,
        "Gamma(1-a+n/2)": 1 - a + n / 2,
        "Gamma(b+m/2)": b + m / 2,
        "Gamma(1-b+m/2)": 1 - b + m / 2,
        "Gamma(1-a-b+(n+m)/2)": 1 - a - b + (n + m) / 2,
        "Gamma(a+b+(n+m)/2)": a + b + (n + m) / 2,
    }
    for name, arg in labels.items():
        z = complex(arg)
        if abs(z.imag) < 1e-12 and z.real <= 1e-12 and \
                abs(z.real - round(z.real)) < 1e-12:
            raise PoleError(f"{name} has nonpositive-integer argument {z}")
    out = np.exp(log_b_gamma_disc(a, n, b, m))
    if np.ndim(out) == 0:
        out = complex(out)
        return out.real if abs(out.imag) < 1e-12 * max(1.0, abs(out.real)) else out
    return out


def b_beta(x, y) -> complex:
    """Euler beta kernel Gamma(x) Gamma(y) / Gamma(x + y), via log-gamma."""
    return complex(np.exp(log_gamma(x) + log_gamma(y) - log_gamma(x + y)))


# ---------------------------------------------------------------------------
# balanced parameter containers
# ---------------------------------------------------------------------------

def _check_zero_sum(values, label: str) -> tuple:
    vals = tuple(int(v) for v in values)
    if len(vals) != 3:
        raise ValueError(f"{label} must have exactly 3 entries")
    if sum(vals) != 0:
        raise ValueError(f"{label} must sum to zero, got {vals}")
    return vals


@dataclass(frozen=True)
class HyperbolicParams:
    """Parameters of the hyperbolic identity: sum_i (a_i + b_i) = w1 + w2."""

    a: tuple
    b: tuple
    omega: ModularPair

    def __post_init__(self) -> None:
        a = tuple(complex(v) for v in self.a)
        b = tuple(complex(v) for v in self.b)
        if len(a) != 3 or len(b) != 3:
            raise ValueError("need exactly 3 a's and 3 b's")
        total = sum(a) + sum(b)
        ws = self.omega.omega_sum
        if abs(total - ws) > 1e-12 * max(1.0, abs(ws)):
            raise ValueError(
                f"balancing violated: sum(a)+sum(b) = {total}, expected {ws}"
            )
        for ai in a:
            for bj in b:
                r = ((ai + bj) / ws).real
                if not 0 < r < 1:
                    raise ValueError(
                        f"pole separation violated: Re((a+b)/(w1+w2)) = {r}"
                    )
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def balanced(cls, a1, a2, a3, b1, b2, omega: ModularPair) -> "HyperbolicParams":
        """Solve the balancing constraint for b3."""
        b3 = omega.omega_sum - (a1 + a2 + a3 + b1 + b2)
        return cls((a1, a2, a3), (b1, b2, b3), omega)

    def to_record(self) -> dict:
        return {
            "identity": "hyperbolic",
            "a": [[v.real, v.imag] for v in self.a],
            "b": [[v.real, v.imag] for v in self.b],
            "omega1": [self.omega.omega1.real, self.omega.omega1.imag],
            "omega2": [self.omega.omega2.real, self.omega.omega2.imag],
        }

    @classmethod
    def from_record(cls, rec: dict) -> "HyperbolicParams":
        omega = ModularPair(complex(*rec["omega1"]), complex(*rec["omega2"]))
        return cls(
            tuple(complex(re, im) for re, im in rec["a"]),
            tuple(complex(re, im) for re, im in rec["b"]),
            omega,
        )


@dataclass(frozen=True)
class IndexParams:
    """Parameters of the index identity.

    Continuous parameters are stored through their real exponents:
    a_i = q^{s_i}, b_i = q^{t_i} with sum s_i = sum t_i = 1/2, which makes
    the balancing prod a_i = prod b_i = q^{1/2} exact by construction.
    Integer spins satisfy sum n_i = sum m_i = 0.
    """

    s: tuple
    t: tuple
    n: tuple
    m: tuple
    q: float

    def __post_init__(self) -> None:
        s = tuple(float(v) for v in self.s)
        t = tuple(float(v) for v in self.t)
        if len(s) != 3 or len(t) != 3:
            raise ValueError("need exactly 3 exponents per family")
        for label, e in (("s", s), ("t", t)):
            if abs(sum(e) - 0.5) > 1e-12:
                raise ValueError(f"balancing violated: sum({label}) = {sum(e)}")
        n = _check_zero_sum(self.n, "n")
        m = _check_zero_sum(self.m, "m")
        qv = float(self.q)
        if not 0 < qv < 1:
            raise ValueError(f"need 0 < q < 1, got {qv}")
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "q", qv)

    @classmethod
    def balanced(cls, s1, s2, t1, t2, n1, n2, m1, m2, q) -> "IndexParams":
        """Solve every constraint for the third component."""
        return cls((s1, s2, 0.5 - s1 - s2), (t1, t2, 0.5 - t1 - t2),
                   (n1, n2, -n1 - n2), (m1, m2, -m1 - m2), q)

    @property
    def a(self) -> tuple:
        return tuple(self.q ** e for e in self.s)

    @property
    def b(self) -> tuple:
        return tuple(self.q ** e for e in self.t)

    def all_exponents_positive(self) -> bool:
        """True when every exponent (including shifted combinations that
        control contour poles) stays positive, so the plain unit circle is
        the correct contour for every term."""
        return all(e > 0 for e in self.s) and all(e > 0 for e in self.t)

    def to_record(self) -> dict:
        return {
            "identity": "index",
            "s": list(self.s), "t": list(self.t),
            "n": list(self.n), "m": list(self.m),
            "q": self.q,
        }

    @classmethod
    def from_record(cls, rec: dict) -> "IndexParams":
        return cls(tuple(rec["s"]), tuple(rec["t"]),
                   tuple(rec["n"]), tuple(rec["m"]), rec["q"])


@dataclass(frozen=True)
class GammaParams:
    """Parameters of the gamma sum-integral identity.

    sum alpha_i = sum beta_i = 1/2, sum n_i = sum m_i = 0, and no gamma
    argument alpha_i + beta_j + (n_i + m_j)/2 may hit a nonpositive integer.
    """

    alpha: tuple
    beta: tuple
    n: tuple
    m: tuple

    def __post_init__(self) -> None:
        alpha = tuple(float(v) for v in self.alpha)
        beta = tuple(float(v) for v in self.beta)
        if len(alpha) != 3 or len(beta) != 3:
            raise ValueError("need exactly 3 parameters per family")
        for label, e in (("alpha", alpha), ("beta", beta)):
            if abs(sum(e) - 0.5) > 1e-12:
                raise ValueError(f"balancing violated: sum({label}) = {sum(e)}")
        n = _check_zero_sum(self.n, "n")
        m = _check_zero_sum(self.m, "m")
        for label, e in (("alpha", alpha), ("beta", beta)):
            for v in e:
                if v <= 0:
                    raise ValueError(
                        f"{label} components must be positive for absolute "
                        f"convergence, got {v}"
                    )
        for i in range(3):
            for j in range(3):
                arg = alpha[i] + beta[j] + (n[i] + m[j]) / 2
                if abs(2 * arg - round(2 * arg)) < 1e-9:
                    raise ValueError(
                        "degenerate pairwise sum (integer or half-integer): "
                        f"alpha_{i}+beta_{j}+(n+m)/2 = {arg}"
                    )
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "m", m)

    @classmethod
    def balanced(cls, a1, a2, b1, b2, n1=0, n2=0, m1=0, m2=0) -> "GammaParams":
        return cls((a1, a2, 0.5 - a1 - a2), (b1, b2, 0.5 - b1 - b2),
                   (n1, n2, -n1 - n2), (m1, m2, -m1 - m2))

    @classmethod
    def symmetric_point(cls) -> "GammaParams":
        return cls((1 / 6, 1 / 6, 1 / 6), (1 / 6, 1 / 6, 1 / 6),
                   (0, 0, 0), (0, 0, 0))

    def to_record(self) -> dict:
        return {
            "identity": "gamma",
            "alpha": list(self.alpha), "beta": list(self.beta),
            "n": list(self.n), "m": list(self.m),
        }

    @classmethod
    def from_record(cls, rec: dict) -> "GammaParams":
        return cls(tuple(rec["alpha"]), tuple(rec["beta"]),
                   tuple(rec["n"]), tuple(rec["m"]))


@dataclass(frozen=True)
class BetaParams:
    """Parameters of the Euler-beta identity: sum_i (a_i + b_i) = 1."""

    a: tuple
    b: tuple

    def __post_init__(self) -> None:
        a = tuple(complex(v) for v in self.a)
        b = tuple(complex(v) for v in self.b)
        if len(a) != 3 or len(b) != 3:
            raise ValueError("need exactly 3 a's and 3 b's")
        total = sum(a) + sum(b)
        if abs(total - 1) > 1e-12:
            raise ValueError(f"balancing violated: sum(a)+sum(b) = {total}")
        for ai in a:
            for bj in b:
                if not 0 < (ai + bj).real < 1:
                    raise ValueError(
                        f"pole separation violated: Re(a+b) = {(ai + bj).real}"
                    )
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def balanced(cls, a1, a2, a3, b1, b2) -> "BetaParams":
        return cls((a1, a2, a3), (b1, b2, 1 - (a1 + a2 + a3 + b1 + b2)))

    def to_record(self) -> dict:
        return {
            "identity": "beta",
            "a": [[v.real, v.imag] for v in self.a],
            "b": [[v.real, v.imag] for v in self.b],
        }

    @classmethod
    def from_record(cls, rec: dict) -> "BetaParams":
        return cls(tuple(complex(re, im) for re, im in rec["a"]),
                   tuple(complex(re, im) for re, im in rec["b"]))


# ---------------------------------------------------------------------------
# samplers
# ---------------------------------------------------------------------------

def _balanced_triple(rng: np.random.Generator, lo: float, hi: float,
                     total: float) -> tuple:
    """Draw (v1, v2) from [lo, hi]^2 and solve v3 = total - v1 - v2,
    rejecting until v3 also lies in [lo, hi]."""
    for _ in range(10_000):
        v1, v2 = rng.uniform(lo, hi, 2)
        v3 = total - v1 - v2
        if lo <= v3 <= hi:
            return (float(v1), float(v2), float(v3))
    raise RuntimeError("balanced-triple sampling failed")  # pragma: no cover


def _zero_sum_spins(rng: np.random.Generator) -> tuple:
    """Two spins from {-2..2}, third solved; rejected if it leaves the box."""
    for _ in range(10_000):
        n1, n2 = (int(v) for v in rng.integers(-2, 3, 2))
        n3 = -n1 - n2
        if -2 <= n3 <= 2:
            return (n1, n2, n3)
    raise RuntimeError("spin sampling failed")  # pragma: no cover


def sample_gamma(rng: np.random.Generator, with_spins: bool = True) -> GammaParams:
    """A balanced gamma parameter point from the safe box [0.05, 0.4]."""
    alpha = _balanced_triple(rng, 0.05, 0.4, 0.5)
    beta = _balanced_triple(rng, 0.05, 0.4, 0.5)
    n = _zero_sum_spins(rng) if with_spins else (0, 0, 0)
    m = _zero_sum_spins(rng) if with_spins else (0, 0, 0)
    return GammaParams(alpha, beta, n, m)


def sample_index(rng: np.random.Generator, with_spins: bool = True,
                 q_range: tuple = (0.2, 0.5)) -> IndexParams:
    """A balanced index parameter point with q in q_range."""
    q = float(rng.uniform(*q_range))
    s = _balanced_triple(rng, 0.05, 0.4, 0.5)
    t = _balanced_triple(rng, 0.05, 0.4, 0.5)
    n = _zero_sum_spins(rng) if with_spins else (0, 0, 0)
    m = _zero_sum_spins(rng) if with_spins else (0, 0, 0)
    return IndexParams(s, t, n, m, q)


def sample_hyperbolic(rng: np.random.Generator,
                      omega: ModularPair | None = None) -> HyperbolicParams:
    """A balanced hyperbolic point: parameters are real multiples of
    omega1 + omega2 drawn from a box that keeps every pair separation
    Re((a_i + b_j)/(w1 + w2)) inside (0, 1)."""
    if omega is None:
        omega = ModularPair(0.4 + 0.9j, 1.0)
    ws = omega.omega_sum
    x = rng.uniform(0.05, 0.15, 3)
    y12 = rng.uniform(0.05, 0.15, 2)
    a = tuple(float(v) * ws for v in x)
    b1, b2 = (float(v) * ws for v in y12)
    return HyperbolicParams.balanced(a[0], a[1], a[2], b1, b2, omega)


def sample_beta(rng: np.random.Generator) -> BetaParams:
    """A balanced beta point with every Re(a_i + b_j) inside (0, 1)."""
    x = rng.uniform(0.05, 0.15, 3)
    y12 = rng.uniform(0.05, 0.15, 2)
    return BetaParams.balanced(float(x[0]), float(x[1]), float(x[2]),
                               float(y12[0]), float(y12[1]))
