#!/usr/bin/env python3
"""Print the status of 0 in sigma(a (x) b) for every pair of zero kinds.

Rows are the kind of 0 in ``a``, columns the kind in ``b``; each cell shows
the status and the case id that produced it.
"""

import itertools

from drazin_tensor.tensor import ZeroKind, lookup_zero_case

kinds = list(ZeroKind)
width = 26
print("a \\ b".ljust(6) + "".join(k.value.ljust(width) for k in kinds))
for ka in kinds:
    cells = []
    for kb in kinds:
        case = lookup_zero_case(ka, kb)
        cells.append(f"{case.status.value}:{case.case_id}".ljust(width))
    print(ka.value.ljust(6) + "".join(cells))

print()
print("kinds: inv = 0 not in spectrum, nil = nilpotent, pole = 0 a pole (not nilpotent),")
print("       qn = spectrum {0} without nilpotence, iso = 0 isolated non-pole, acc = 0 non-isolated")
used = {lookup_zero_case(a, b).case_id for a, b in itertools.product(kinds, kinds)}
print(f"{len(used)} case ids cover all {len(kinds) ** 2} pairs")
