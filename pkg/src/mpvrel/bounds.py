"""Closed-form dimension bounds and counting formulas.

All arithmetic is on integers; divisions are checked to be exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from sympy import factorint, isprime, totient
from sympy.functions.combinatorial.numbers import mobius


def _exact_div(a, b):
    q, r = divmod(a, b)
    if r:
        raise ValueError(f"{a}/{b} is not an integer")
    return q


def _check_prime(p, least=5):
    if not isinstance(p, int) or p < least or not isprime(p):
        raise ValueError(f"expected a prime >= {least}, got {p!r}")


def dg_coefficients(N):
    """``(a, b)`` with D(w) = a D(w-1) - b D(w-2) for N >= 3."""
    nu = len(factorint(N))
    phi = int(totient(N))
    return _exact_div(phi, 2) + nu, nu - 1


def dg_bound(w, N):
    """Coefficient of t^w in the generating series of the upper bound D(w, N).

    N = 1: 1/(1 - t^2 - t^3); N = 2: 1/(1 - t - t^2);
    N >= 3: 1/(1 - (phi(N)/2 + nu(N)) t + (nu(N) - 1) t^2), nu = number of
    distinct prime factors.
    """
    if not isinstance(w, int) or w < 0:
        raise ValueError(f"weight must be a non-negative integer, got {w!r}")
    if not isinstance(N, int) or N < 1:
        raise ValueError(f"level must be a positive integer, got {N!r}")
    D = [1]
    for n in range(1, w + 1):
        if N == 1:
            v = (D[n - 2] if n >= 2 else 0) + (D[n - 3] if n >= 3 else 0)
        elif N == 2:
            v = D[n - 1] + (D[n - 2] if n >= 2 else 0)
        else:
            a, b = dg_coefficients(N)
            v = a * D[n - 1] - (b * D[n - 2] if n >= 2 else 0)
        D.append(v)
    return D[w]


def improved_prime_bound(p):
    """(5p + 7)(p + 1)/24, the weight-2 bound at prime level p >= 5."""
    _check_prime(p)
    return _exact_div((5 * p + 7) * (p + 1), 24)


def diagonal_depth2_dim(p):
    """(p - 1)(p - 5)/12."""
    _check_prime(p)
    return _exact_div((p - 1) * (p - 5), 12)


def kernel_beta_formula(p):
    """dim of the kernel of the wedge bracket map at prime level p.

    Computed as dim Lambda^2 of a ((p-1)/2)-dimensional space minus the
    depth-2 diagonal dimension; equals (p^2 - 1)/24.
    """
    _check_prime(p)
    m = (p - 1) // 2
    out = m * (m - 1) // 2 - diagonal_depth2_dim(p)
    assert out == _exact_div(p * p - 1, 24)
    return out


def cuspform_dim(p):
    """(p - 5)(p - 7)/24 for a prime p >= 11."""
    _check_prime(p, least=11)
    return _exact_div((p - 5) * (p - 7), 24)


def cuspform_residual(p):
    """kernel_beta_formula(p) - cuspform_dim(p), which is (p - 3)/2."""
    return kernel_beta_formula(p) - cuspform_dim(p)


def lyndon_dim(n):
    """(1/n) sum_{d | n} mu(n/d) 2^d - delta_{1,n}."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")
    s = sum(int(mobius(n // d)) * 2**d for d in range(1, n + 1) if n % d == 0)
    return _exact_div(s, n) - (1 if n == 1 else 0)


def free_lie_dims(gen_degrees, max_degree):
    """Graded dimensions of a free Lie algebra (generic Witt formula).

    ``gen_degrees[k]`` is the number of generators in degree k.  Uses
    prod_n (1 - t^n)^{-c_n} = 1 / (1 - g(t)), g the generator series.
    """
    # Hilbert series of the enveloping algebra is 1/(1 - g)
    U = [1] + [0] * max_degree
    for n in range(1, max_degree + 1):
        U[n] = sum(gen_degrees.get(k, 0) * U[n - k] for k in range(1, n + 1))
    c = [0] * (max_degree + 1)
    # PBW: U(t) = prod (1 - t^n)^{-c_n}; peel degree by degree
    for n in range(1, max_degree + 1):
        P = [1] + [0] * max_degree
        for m in range(1, n):
            for _ in range(c[m]):
                # multiply by 1/(1 - t^m)
                for k in range(m, max_degree + 1):
                    P[k] += P[k - m]
        c[n] = U[n] - P[n]
    return c[1:]


@dataclass
class BoundReport:
    weight: int
    level: int
    D: int
    improved: int | None = None
    notes: list = field(default_factory=list)

    def as_dict(self):
        return {
            "weight": self.weight,
            "level": self.level,
            "D": self.D,
            "improved": self.improved,
            "notes": list(self.notes),
        }


def bound_report(w, N, improved=False):
    rep = BoundReport(w, N, dg_bound(w, N))
    if improved:
        if w == 2 and N >= 5 and isprime(N):
            rep.improved = improved_prime_bound(N)
            rep.notes.append(f"lowered by (p^2-1)/24 = {kernel_beta_formula(N)}")
        else:
            rep.notes.append("improved bound only available for w=2 at prime N>=5")
    return rep
