"""
Arithmetic in the surrogate field
=================================

Elements are rational functions in a root of ``t``, with ``t`` playing the
role of a positive infinitesimal.
"""

from cartanlimits import T, parse_hreal, print_hreal, t_power

# parse a few elements; exponents may be fractions
x = parse_hreal("t^(1/2) + 3*t^2")
y = parse_hreal("(1 + t)/(2 - t^(1/3))")
print(print_hreal(x * y))

# the order: t is positive but smaller than every positive rational
print(T > 0, T < parse_hreal("1/1000"))

# valuations add under multiplication
print(x.valuation(), y.valuation(), (x * y).valuation())

# magnitude classes: infinitesimal, appreciable, infinite
for z in (x, y, t_power(-2)):
    print(print_hreal(z), "->", z.magnitude().name)

# the shadow is the standard part of a finite element
print(y.shadow())
