"""
Gauge and metric geometry in jet coordinates

Structure constants of the shipped gauge algebras, connection fields with
their field strengths and lifts, and the Levi-Civita geometry of a metric
field (Christoffels, Ricci tensor, natural lift of base vector fields).
"""
import itertools

import sympy

from jetvar.lib.exceptions import ModelParametersException
from jetvar.lib.jetcalc import total_derivative, vertical_part
from jetvar.lib.multiindex import MultiIndex

GROUPS = {
    "u1": "U(1), abelian",
    "su2": "su(2), c^i_jk = ε_ijk",
}


def structure_constants(group):
    """
    Structure constants and invariant metric of a shipped gauge algebra

    :param str group:  "u1" or "su2"
    :return tuple:  (dimension, dict (i, j, k) to c^i_{jk}, dict (i, j) to 𝔨_{ij})
    """
    if group == "u1":
        return 1, {}, {(1, 1): sympy.Integer(1)}
    if group == "su2":
        constants = {}
        for i, j, k in itertools.product(range(1, 4), repeat=3):
            value = sympy.LeviCivita(i, j, k)
            if value != 0:
                constants[(i, j, k)] = sympy.Integer(value)
        return 3, constants, {(i, i): sympy.Integer(1) for i in range(1, 4)}
    raise ModelParametersException(f"Unknown gauge group '{group}', use one of {', '.join(GROUPS)}")


def parse_structure_constants(text):
    """
    Parse "i j k = value" entries separated by semicolons

    Entries are taken as given; nothing is completed by antisymmetry, so
    incomplete tables fail validation.

    :return tuple:  (dimension, dict (i, j, k) to value)
    """
    constants = {}
    for entry in [entry.strip() for entry in text.split(";") if entry.strip()]:
        try:
            indices, value = entry.split("=")
            i, j, k = (int(index) for index in indices.split())
            constants[(i, j, k)] = sympy.Rational(value.strip())
        except (ValueError, TypeError) as e:
            raise ModelParametersException(f"Cannot parse structure constant entry '{entry}'") from e
    if any(index < 1 for key in constants for index in key):
        raise ModelParametersException("Structure constant indices start at 1")
    dimension = max((index for key in constants for index in key), default=1)
    return dimension, {key: value for key, value in constants.items() if value != 0}


def validate_structure_constants(dimension, constants, killing):
    """
    Check antisymmetry, the Jacobi identity and ad-invariance of 𝔨

    :param int dimension:  Dimension of the algebra
    :param dict constants:  (i, j, k) to c^i_{jk}
    :param dict killing:  (i, j) to 𝔨_{ij}
    :raises ModelParametersException:  Naming the first violated identity
    """
    c = lambda i, j, k: constants.get((i, j, k), 0)
    k_ = lambda i, j: killing.get((i, j), 0)
    indices = range(1, dimension + 1)

    for i, j, k in itertools.product(indices, repeat=3):
        if c(i, j, k) != -c(i, k, j):
            raise ModelParametersException(f"Structure constants are not antisymmetric: c^{i}_{j}{k} != -c^{i}_{k}{j}")

    for i, j, k, m in itertools.product(indices, repeat=4):
        jacobi = sum(c(l, j, k) * c(i, m, l) + c(l, k, m) * c(i, j, l) + c(l, m, j) * c(i, k, l) for l in indices)
        if jacobi != 0:
            raise ModelParametersException(f"Structure constants violate the Jacobi identity at ({i}, {j}, {k}, {m})")

    for i, j in itertools.product(indices, repeat=2):
        if k_(i, j) != k_(j, i):
            raise ModelParametersException("The invariant metric is not symmetric")
    for i, j, k in itertools.product(indices, repeat=3):
        invariance = sum(k_(i, l) * c(l, j, k) + k_(j, l) * c(l, i, k) for l in indices)
        if invariance != 0:
            raise ModelParametersException(f"The invariant metric is not ad-invariant at ({i}, {j}, {k})")


def minkowski(dimension):
    """
    Flat mostly-minus metric as a function (μ, ν) -> η^{μν}
    """
    return lambda mu, nu: sympy.Integer(0) if mu != nu else sympy.Integer(1 if mu == 1 else -1)


class Connection:
    """
    A principal connection A^i_μ in jet coordinates

    Abelian one-component connections (Maxwell) are declared as a field
    with ranges (n,); non-abelian ones with ranges (dim 𝔤, n).
    """
    def __init__(self, context, field, dimension, constants, killing):
        self.context = context
        self.field = field
        self.dimension = dimension
        self.constants = constants
        self.killing = killing
        self.n = context.dimension
        self._strength = {}

    def component(self, i, mu):
        if len(self.context.fields[self.field].ranges) == 1:
            return self.context.component(self.field, mu)
        return self.context.component(self.field, i, mu)

    def potential(self, i, mu, alpha=None):
        return self.context.jet(self.component(i, mu), alpha)

    def derivative(self, i, mu, nu):
        return self.potential(i, mu, MultiIndex.unit(self.n, nu))

    def strength(self, i, mu, nu):
        """
        F^i_{μν} = D_μ A^i_ν − D_ν A^i_μ + c^i_{jk} A^j_μ A^k_ν
        """
        if mu == nu:
            return sympy.Integer(0)
        if mu > nu:
            return -self.strength(i, nu, mu)
        if (i, mu, nu) not in self._strength:
            value = self.derivative(i, nu, mu) - self.derivative(i, mu, nu)
            for (a, j, k), c in self.constants.items():
                if a == i:
                    value += c * self.potential(j, mu) * self.potential(k, nu)
            self._strength[(i, mu, nu)] = self.context.canonical(value)
        return self._strength[(i, mu, nu)]

    def covariant(self, i, mu, gauge):
        """
        ∇_μ Ξ^i = D_μ Ξ^i + c^i_{jk} A^j_μ Ξ^k

        :param dict gauge:  i to Ξ^i
        """
        value = total_derivative(gauge.get(i, 0), mu, self.context)
        for (a, j, k), c in self.constants.items():
            if a == i and gauge.get(k, 0) != 0:
                value += c * self.potential(j, mu) * gauge[k]
        return self.context.canonical(value)

    def yang_mills(self, upper, sqrtg=1):
        """
        −¼ √g Σ_{λ<γ} 𝔨_{ij} F^{iλγ} F^j_{λγ}, indices raised with ``upper``

        :param upper:  Function (μ, ν) -> g^{μν}
        """
        n = self.n
        indices = range(1, n + 1)
        value = sympy.Integer(0)
        for (i, j), k in self.killing.items():
            for lam, gam in itertools.combinations(indices, 2):
                raised = sum((upper(lam, a) * upper(gam, b) - upper(gam, a) * upper(lam, b)) * self.strength(i, a, b)
                             for a, b in itertools.combinations(indices, 2))
                value += k * raised * self.strength(j, lam, gam)
        return self.context.canonical(-sympy.Rational(1, 4) * sqrtg * value)

    def lift(self, xi, gauge):
        """
        Fiber components of the lift of ξ^ρ ∂_ρ + Ξ^i ρ_i to the connection

        Ξ^{A^i_μ} = −A^i_ρ D_μ ξ^ρ + ∇_μ Ξ^i, so that the vertical part is
        −£A = −(ξ^ρ D_ρ A^i_μ + A^i_ρ D_μ ξ^ρ − ∇_μ Ξ^i).

        :param tuple xi:  ξ^ρ (may be zeros)
        :param dict gauge:  i to Ξ^i
        :return dict:  FieldComponent to expression
        """
        fiber = {}
        for i in range(1, self.dimension + 1):
            for mu in range(1, self.n + 1):
                value = self.covariant(i, mu, gauge)
                for rho, xi_component in enumerate(xi, start=1):
                    if xi_component != 0:
                        value -= self.potential(i, rho) * total_derivative(xi_component, mu, self.context)
                fiber[self.component(i, mu)] = self.context.canonical(value)
        return fiber


def connection_split_relation(connection, generator, xi, gauge):
    """
    £A^i_μ − (ξ^ρ F^i_{ρμ} − ∇_μ Ξ^i_v) for a vertical-split generator,
    with Ξ^i = Ξ^i_v + A^i_ρ ξ^ρ; identically zero

    :param Connection connection:
    :param GeneratorSpec generator:  Built with ``Connection.lift``
    :param tuple xi:  ξ^ρ
    :param dict gauge:  i to Ξ^i_v
    :return dict:  FieldComponent to residual
    """
    context = connection.context
    vertical = vertical_part(generator, context)
    residual = {}
    for i in range(1, connection.dimension + 1):
        for mu in range(1, connection.n + 1):
            component = connection.component(i, mu)
            expected = sum((xi_component * connection.strength(i, rho, mu)
                            for rho, xi_component in enumerate(xi, start=1)), sympy.Integer(0)) \
                - connection.covariant(i, mu, gauge)
            residual[component] = context.canonical(-vertical[component] - expected)
    return residual


class MetricGeometry:
    """
    Levi-Civita geometry of a metric field holding the inverse metric g^{μν}
    """
    def __init__(self, context):
        if context.metric is None:
            raise ValueError("Metric geometry needs a context with a metric field")
        self.context = context
        self.metric = context.metric
        self.n = context.dimension
        self._low_derivative = {}
        self._christoffel = {}
        self._ricci = {}

    def upper(self, mu, nu):
        return self.metric.upper(mu, nu)

    def low(self, mu, nu):
        return self.metric.low(mu, nu)

    def low_derivative(self, mu, nu, rho):
        """
        D_ρ g_{μν}, through the chain rule on the inverse metric
        """
        key = (min(mu, nu), max(mu, nu), rho)
        if key not in self._low_derivative:
            self._low_derivative[key] = total_derivative(self.low(mu, nu), rho, self.context)
        return self._low_derivative[key]

    def christoffel(self, mu, nu, beta):
        """
        γ^μ_{νβ} = ½ g^{μλ}(D_ν g_{λβ} + D_β g_{λν} − D_λ g_{νβ})
        """
        key = (mu, min(nu, beta), max(nu, beta))
        if key not in self._christoffel:
            value = sum((self.upper(mu, lam) * (self.low_derivative(lam, beta, nu) + self.low_derivative(lam, nu, beta)
                                                - self.low_derivative(nu, beta, lam))
                         for lam in range(1, self.n + 1)), sympy.Integer(0))
            self._christoffel[key] = self.context.canonical(sympy.Rational(1, 2) * value)
        return self._christoffel[key]

    def ricci(self, alpha, beta):
        """
        R_{αβ} = D_μ γ^μ_{αβ} − D_β γ^μ_{αμ} + γ^μ_{νμ} γ^ν_{αβ} − γ^μ_{νβ} γ^ν_{αμ}
        """
        key = (min(alpha, beta), max(alpha, beta))
        if key not in self._ricci:
            indices = range(1, self.n + 1)
            value = sympy.Integer(0)
            for mu in indices:
                value += total_derivative(self.christoffel(mu, alpha, beta), mu, self.context)
                value -= total_derivative(self.christoffel(mu, alpha, mu), beta, self.context)
                for nu in indices:
                    value += self.christoffel(mu, nu, mu) * self.christoffel(nu, alpha, beta)
                    value -= self.christoffel(mu, nu, beta) * self.christoffel(nu, alpha, mu)
            self._ricci[key] = self.context.canonical(value)
        return self._ricci[key]

    def scalar_curvature(self):
        indices = range(1, self.n + 1)
        return self.context.canonical(sum((self.upper(alpha, beta) * self.ricci(alpha, beta)
                                           for alpha in indices for beta in indices), sympy.Integer(0)))

    def einstein_hilbert(self, kappa):
        """
        −(1/2κ) √g g^{αβ} R_{αβ}
        """
        return self.context.canonical(-self.metric.sqrtg * self.scalar_curvature() / (2 * kappa))

    def natural_lift(self, xi):
        """
        Fiber components Ξ^{μν} = g^{μρ} D_ρ ξ^ν + g^{ρν} D_ρ ξ^μ of the
        natural lift of ξ^ρ ∂_ρ

        :param tuple xi:  ξ^ρ
        :return dict:  FieldComponent to expression
        """
        fiber = {}
        indices = range(1, self.n + 1)
        for mu in indices:
            for nu in range(mu, self.n + 1):
                value = sum((self.upper(mu, rho) * total_derivative(xi[nu - 1], rho, self.context)
                             + self.upper(rho, nu) * total_derivative(xi[mu - 1], rho, self.context)
                             for rho in indices), sympy.Integer(0))
                fiber[self.context.component(self.metric.field, mu, nu)] = self.context.canonical(value)
        return fiber

    def covariant_upper(self, sigma, mu, xi):
        """
        ∇^σ ξ^μ = g^{σα}(D_α ξ^μ + γ^μ_{αβ} ξ^β)
        """
        indices = range(1, self.n + 1)
        value = sympy.Integer(0)
        for alpha in indices:
            inner = total_derivative(xi[mu - 1], alpha, self.context)
            inner += sum((self.christoffel(mu, alpha, beta) * xi[beta - 1] for beta in indices), sympy.Integer(0))
            value += self.upper(sigma, alpha) * inner
        return self.context.canonical(value)

    def contraction_residual(self, mu, nu):
        """
        Σ_α g_{μα} g^{αν} − δ^ν_μ, zero wherever the metric is invertible
        """
        value = sum((self.low(mu, alpha) * self.upper(alpha, nu) for alpha in range(1, self.n + 1)), sympy.Integer(0))
        return value - (1 if mu == nu else 0)
