"""
The identities behind the construction
======================================

"""

# The component pair (G_n, H_n) is defined by expanding (x + s)^n with
# s^2 = alpha and splitting off the s part.  Everything downstream rests
# on that single identity.
import random

from redeiperm import (dickson_eval, gh_coeffs, gh_eval, make_field,
                       poly_gcd, render_poly)

ctx = make_field(3, 2)
alpha = ctx.alpha_from_l(2)
rng = random.Random(7)

pair = gh_coeffs(5, alpha)
print("G_5 =", render_poly(pair.g))
print("H_5 =", render_poly(pair.h))

x = ctx.from_packed(rng.randrange(ctx.q2))
g, h = gh_eval(5, alpha, x)
s = ctx.sqrt(alpha)[1]
print("(x+s)^5 == G_5(x) + H_5(x)*s:", (x + s) ** 5 == g + h * s)
print("(x-s)^5 == G_5(x) - H_5(x)*s:", (x - s) ** 5 == g - h * s)

# Both components are disguised Dickson polynomials, which is how the
# classical Redei-function theory transfers over.
two_inv = ctx.scalar(2).inv()
print("G_5 via Dickson:", g == two_inv * dickson_eval(5, x * x - alpha, 2 * x))
print("H_5 via Dickson:", h == (2 * s).inv() * dickson_eval(5, alpha - x * x,
                                                            2 * s))

# The pair is always coprime, so G_n/H_n never degenerates.
one = poly_gcd(pair.g, pair.h)
print("gcd(G_5, H_5) =", render_poly(one))

# On the norm-one subgroup mu_{q+1} the q-th power of H_n folds back onto
# G_n.  That conjugation identity is what turns bijectivity on mu into the
# two gcd conditions of the criterion.
q = ctx.q
n = 5
scale = alpha ** (-((n - 1) // 2))
mu = [ctx.zeta ** i for i in range(q + 1)]
holds = all(h_ ** q == b ** (-n) * scale * g_
            for b in mu for g_, h_ in [gh_eval(n, alpha, b)])
print(f"H_{n}(b)^q = b^(-{n}) * alpha^(-{(n - 1) // 2}) * G_{n}(b) "
      f"on all of mu_{{q+1}}:", holds)

# The induced map on mu is b -> b^n H_n(b)^(q-1), a unit-circle rotation
# flavor of the original map; its values stay inside mu_{2(q+1)}.
values = sorted({(b ** n * gh_eval(n, alpha, b)[1] ** (q - 1)).val
                 for b in mu})
print("induced map on mu hits", len(values), "distinct values of",
      len(mu), "inputs")
