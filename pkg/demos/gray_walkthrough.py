"""
From bit string to host coordinate, one vertex at a time
========================================================

The position map sends each cube vertex to a host coordinate by slicing
its bits into one block per factor and ranking each block in reflected
binary order. This script walks a single vertex through that pipeline,
then prints the whole map for a small cylinder so the structure is
visible at a glance.
"""

import numpy as np

from wirecube import gray_embedding, gray_rank, parse_host, wl_direct

spec = parse_host("C8xP4")
emb = gray_embedding(spec)

# take one vertex of the 5-cube and slice its bits into factor blocks
text = "11011"
v = int(text, 2)
print(f"host {spec}: factor blocks of {text} are {text[:3]} and {text[3:]}")

# each block is ranked on its own: reflected binary order, starting at 1
r1 = gray_rank(int(text[:3], 2), 3)
r2 = gray_rank(int(text[3:], 2), 2)
print(f"rank({text[:3]}) = {r1}, rank({text[3:]}) = {r2}")
print(f"so the map sends {text} to coordinate {emb.coordinate(v)}")
print(f"flattened (row-major, first factor slowest): {emb.map[v]}")
print()

# the full map as an 8 x 4 grid: rows are the cycle, columns the path.
# walking down any column or across any row changes exactly one bit,
# which is what keeps the stretched cube edges short.
inverse = np.empty(spec.size, dtype=np.int64)
inverse[emb.map] = np.arange(spec.size)
print("cube vertex at each host position (cycle row, path column):")
for row in range(8):
    cells = [f"{inverse[row * 4 + col]:05b}" for col in range(4)]
    print("  " + "  ".join(cells))
print()

print(f"total wirelength of this embedding: {wl_direct(emb).total}")
