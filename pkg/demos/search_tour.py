"""Brute-force searches for scalar-valued products, and what they find.

The 3D and 4D searches take well under a second.  Set ``FULL=1`` in the
environment to add the 5D nested search (about a minute).
"""

import os

from cliffdet.group import cayley_table, cosets
from cliffdet.search import dedup, search_nested, search_plain_products
from cliffdet.tables import class_count_table, contribution_table

# products of four grade-negated copies of A in 3D
rep = search_plain_products(3, 4)
print(f"3D products: {len(rep.scalar())} scalar, {len(rep.det_valued())} equal to det")
for cls in dedup(rep.det_valued(), 3):
    print("   class of", len(cls.members), "e.g.", cls.representative.text)

# none survive in 4D
print("4D products:", len(search_plain_products(4, 4).det_valued()), "equal to det")

# nested self-products in 4D
for v in search_nested(4, 2):
    print("   4D nested:", v.text)

# the value classes are cosets of a four-element normal subgroup
for name, row in zip(cosets(4).set_names, cosets(4).cosets):
    print(name, [S.label() or "Id" for S in row])
print("quotient group:", cayley_table(4).isomorphism_type())

# which grade pairs survive a self-product
print(contribution_table(4, {1, 2}).to_text())
print(class_count_table(3).to_text())

if os.environ.get("FULL") == "1":
    five = search_nested(5, 3)
    print("5D depth 3:", len(five.det_valued()), "determinant chains,", len(dedup(five.det_valued(), 5)), "classes")
