"""Integrand descriptions for the exponential-integral family.

The generating functions under study are F(z) = int_{-a}^{b} phi(t) e^{zt} dt
with phi(t) = (t+a)^mu (b-t)^nu g(t) for a polynomial smooth factor g.  An
IntegrandSpec packages (a, b, mu, nu, g) together with the derived quantities
(c, xi, endpoint values of the smooth parts) that every other module needs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .specfun import complex_gamma


def polyval_low_first(coeffs, t):
    """Evaluate a polynomial given lowest-degree-first coefficients."""
    acc = 0.0 + 0.0j
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


@dataclass(frozen=True)
class IntegrandSpec:
    """Parameters of phi(t) = (t+a)^mu (b-t)^nu g(t) on [-a, b].

    g is a polynomial in t, lowest degree first; it must not vanish at
    either endpoint so the endpoint data f1(0), f2(0) stay nonzero.
    """

    a: float
    b: float
    mu: complex
    nu: complex
    g: tuple = (1.0 + 0.0j,)
    name: str = field(default="", compare=False)

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if a < 0 or b < 0:
            raise ValueError(f"endpoints must be nonnegative, got a={a}, b={b}")
        if a + b <= 0:
            raise ValueError("the interval [-a, b] is degenerate (a + b = 0)")
        mu, nu = complex(self.mu), complex(self.nu)
        if mu.real <= -1 or nu.real <= -1:
            raise ValueError(
                f"need Re(mu) > -1 and Re(nu) > -1, got mu={mu}, nu={nu}")
        g = tuple(complex(c) for c in self.g)
        if not g or all(c == 0 for c in g):
            raise ValueError("smooth factor g must be a nonzero polynomial")
        if polyval_low_first(g, -a) == 0:
            raise ValueError("g(-a) = 0 makes f1(0) vanish")
        if polyval_low_first(g, b) == 0:
            raise ValueError("g(b) = 0 makes f2(0) vanish")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "nu", nu)
        object.__setattr__(self, "g", g)

    @property
    def c(self) -> float:
        """max{a, b}, the scale of the limit curve."""
        return max(self.a, self.b)

    @property
    def xi(self) -> float:
        """Endpoint-exponent selector for the approach-rate coefficient."""
        if self.a > self.b:
            return self.mu.real
        if self.a < self.b:
            return self.nu.real
        return min(self.mu.real, self.nu.real)

    def g_at(self, t) -> complex:
        return polyval_low_first(self.g, t)

    @property
    def f1_at_0(self) -> complex:
        """f1(0) from matching phi(t) = (t+a)^mu f1(t+a) at t = -a."""
        return (self.a + self.b) ** complex(self.nu) * self.g_at(-self.a)

    @property
    def f2_at_0(self) -> complex:
        """f2(0) from matching phi(t) = (b-t)^nu f2(b-t) at t = b."""
        return (self.a + self.b) ** complex(self.mu) * self.g_at(self.b)

    def ncond_value(self, n: int) -> complex:
        """Index-selection quantity whose modulus must stay away from 0.

        (-1)^n f1(0) Gamma(mu+1) + f2(0) Gamma(nu+1) a^(nu-mu) n^(mu-nu);
        only meaningful when a = b and Re mu = Re nu, but computable always.
        """
        sgn = -1.0 if n % 2 else 1.0
        left = sgn * self.f1_at_0 * complex_gamma(self.mu + 1)
        base = self.a if self.a > 0 else self.b
        right = (self.f2_at_0 * complex_gamma(self.nu + 1)
                 * base ** (self.nu - self.mu)
                 * complex(n) ** (self.mu - self.nu))
        return left + right


def bessel_spec(alpha: complex) -> IntegrandSpec:
    """Integrand of the Bessel-type kernel: a = b = 1, mu = nu = alpha - 1/2."""
    alpha = complex(alpha)
    if alpha.real <= -0.5:
        raise ValueError(f"need Re(alpha) > -1/2, got {alpha}")
    m = alpha - 0.5
    if m.imag == 0:
        m = complex(m.real, 0.0)
    tag = f"bessel({alpha.real:g})" if alpha.imag == 0 else f"bessel({alpha:g})"
    return IntegrandSpec(1.0, 1.0, m, m, name=tag)


def hyp1f1_spec(bparam: complex) -> IntegrandSpec:
    """Integrand of the confluent-hypergeometric kernel 1F1(1; b; z).

    (b-1) int_0^1 (1-t)^(b-2) e^{zt} dt, i.e. a = 0, nu = b - 2 and a
    constant smooth factor b - 1.
    """
    bparam = complex(bparam)
    if bparam.real <= 1.0:
        raise ValueError(f"need Re(b) > 1, got {bparam}")
    return IntegrandSpec(0.0, 1.0, 0.0, bparam - 2.0, g=(bparam - 1.0,),
                         name=f"hyp1f1({bparam:g})")


# Built-in named specs; fig2/fig3 mirror the two showcase integrands with a
# complex endpoint exponent on one resp. both sides.
def named_spec(name: str) -> IntegrandSpec:
    key = name.strip().lower()
    if key == "fig2":
        return IntegrandSpec(1.0, 1.0, -0.5 + 1.0j, 1.5, name="fig2")
    if key == "fig3":
        return IntegrandSpec(1.0, 21.0 / 20.0, 0.5 - 1.0j, 1.0j, name="fig3")
    if key == "uniform":
        return IntegrandSpec(0.0, 1.0, 0.0, 0.0, name="uniform")
    if key.startswith("bessel(") and key.endswith(")"):
        return bessel_spec(complex(key[7:-1]))
    if key.startswith("hyp1f1(") and key.endswith(")"):
        return hyp1f1_spec(complex(key[7:-1]))
    raise KeyError(f"unknown spec name: {name!r}")
