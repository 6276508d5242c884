"""
How minimum wirelength grows with the host shape
================================================

The closed form makes it cheap to tabulate minima that would take
astronomically long to find by search. Two quick views: single cycles
against single paths as the dimension grows, and every way to split 8
dimensions across two round factors.
"""

from wirecube import enumerate_hosts, formula_wl, parse_host

print("single factor, n-cube into a cycle vs a path of the same size:")
print(f"{'n':>3} {'cycle':>10} {'path':>10} {'path/cycle':>11}")
for n in range(2, 13):
    cycle = formula_wl(parse_host(f"C{1 << n}"))[0]
    path = formula_wl(parse_host(f"P{1 << n}"))[0]
    print(f"{n:>3} {cycle:>10} {path:>10} {path / cycle:>11.4f}")
print()

# a cycle beats a path of equal size because distances wrap around; the
# ratio settles toward 4/3 as the subtracted linear term stops mattering

print("all two-cycle splits of 8 dimensions:")
print(f"{'host':>10} {'total':>7}  per-factor")
for n1 in range(2, 7):
    n2 = 8 - n1
    spec = parse_host(f"C{1 << n1}xC{1 << n2}")
    total, terms = formula_wl(spec)
    parts = " + ".join(str(t.value) for t in terms)
    print(f"{str(spec):>10} {total:>7}  {parts}")
print()

# the square torus is the cheapest split, and every host with the same
# vertex count can be ranked the same way
best = min(
    (formula_wl(s)[0], str(s))
    for s in enumerate_hosts(8, min_exponent=2)
    if s.size == 256
)
print(f"cheapest 256-vertex host overall: {best[1]} at {best[0]}")
