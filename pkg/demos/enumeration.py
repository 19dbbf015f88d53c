"""Exact counts for small boards, two independent ways."""

from randqueens.oracles import count_by_permutations, enumerate_classic, enumerate_toroidal

print(" n  classical  toroidal  permutation-filter")
for n in range(1, 11):
    c = enumerate_classic(n)
    t = enumerate_toroidal(n)
    check = count_by_permutations(n) if n <= 9 else "-"
    print(f"{n:2d} {c.count:10d} {t.count:9d} {check!s:>19}")
