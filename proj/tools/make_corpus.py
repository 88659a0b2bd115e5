#!/usr/bin/env python3
"""Writes fixtures/corpus.json: the fixture groups with provenance notes.

Groups without a builtin constructor are given by explicit permutations,
computed here from a concrete model (listed in each entry's provenance).
"""
import itertools
import json
import pathlib


def cycles(perm):
    seen, out = set(), []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j + 1)
            j = perm[j]
        out.append("(" + ",".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


def action(points, gens, act):
    index = {p: i for i, p in enumerate(points)}
    return [cycles([index[act(g, p)] for p in points]) for g in gens]


def pauli():
    # C4 o D8 acting on {i^k e_j}: X swaps e_0, e_1; Z negates e_1; iI multiplies by i
    pts = [(k, j) for k in range(4) for j in range(2)]
    def act(g, p):
        k, j = p
        if g == "X":
            return (k, 1 - j)
        if g == "Z":
            return ((k + 2 * j) % 4, j)
        return ((k + 1) % 4, j)
    return action(pts, ["X", "Z", "i"], act)


def g16_3():
    # (C4 x C2) x| C2 with c: a -> ab, b -> b, acting on the cosets of <c>
    def mul(x, y):
        (a1, b1, c1), (a2, b2, c2) = x, y
        if c1:
            b2 = (b2 + a2) % 2
        return ((a1 + a2) % 4, (b1 + b2) % 2, (c1 + c2) % 2)
    elems = list(itertools.product(range(4), range(2), range(2)))
    c = (0, 0, 1)
    cosets = []
    for g in elems:
        s = frozenset([g, mul(g, c)])
        if s not in cosets:
            cosets.append(s)
    def act(g, coset):
        # left action g.hH on the cosets, written as a right action of g^-1
        return frozenset(mul(inv(g), x) for x in coset)
    def inv(g):
        return next(y for y in elems if mul(g, y) == (0, 0, 0))
    return action(cosets, [(1, 0, 0), (0, 1, 0), c], act)


def b(name, **kw):
    return dict(builtin=name, **kw)


def prod(*fs):
    return b("product", factors=list(fs))


groups = []


def add(name, spec, provenance, **extra):
    groups.append(dict(name=name, spec=spec, provenance=provenance, **extra))


ALL = "complete list of groups of order <= 24 (SmallGroup numbering noted)"
# order <= 7
add("C1", b("cyclic", n=1), ALL)
for n in (2, 3, 5, 7, 11, 13, 17, 19, 23):
    add(f"C{n}", b("cyclic", n=n), ALL)
add("C4", b("cyclic", n=4), ALL)
add("C2^2", b("abelian", factors=[2, 2]), ALL)
add("C6", b("cyclic", n=6), ALL)
add("S3", b("symmetric", n=3), ALL)
# order 8
add("C8", b("cyclic", n=8), ALL)
add("C4xC2", b("abelian", factors=[4, 2]), ALL)
add("C2^3", b("abelian", factors=[2, 2, 2]), ALL)
add("D8", b("dihedral", order=8), ALL)
add("Q8", b("quaternion", order=8), ALL)
# 9, 10
add("C9", b("cyclic", n=9), ALL)
add("C3^2", b("abelian", factors=[3, 3]), ALL)
add("C10", b("cyclic", n=10), ALL)
add("D10", b("dihedral", order=10), ALL)
# 12
add("Dic12", b("dicyclic", order=12), ALL + "; SmallGroup(12,1)")
add("C12", b("cyclic", n=12), ALL)
add("A4", b("alternating", n=4), ALL)
add("D12", b("dihedral", order=12), ALL)
add("C6xC2", b("abelian", factors=[6, 2]), ALL)
# 14, 15
add("C14", b("cyclic", n=14), ALL)
add("D14", b("dihedral", order=14), ALL)
add("C15", b("cyclic", n=15), ALL)
# 16
add("C16", b("cyclic", n=16), ALL + "; SmallGroup(16,1)")
add("C4^2", b("abelian", factors=[4, 4]), ALL + "; SmallGroup(16,2)")
add("(C4xC2):C2", {"generators": g16_3()}, ALL + "; SmallGroup(16,3), <a,b,c | a^4, b^2, c^2, [a,b], [b,c], a^c = ab> on the cosets of <c>")
add("C4:C4", b("semidirect", n=4, m=4, r=3), ALL + "; SmallGroup(16,4)")
add("C8xC2", b("abelian", factors=[8, 2]), ALL + "; SmallGroup(16,5)")
add("M16", b("modular", order=16), ALL + "; SmallGroup(16,6)")
add("D16", b("dihedral", order=16), ALL + "; SmallGroup(16,7)")
add("SD16", b("semidihedral", order=16), ALL + "; SmallGroup(16,8)")
add("Q16", b("quaternion", order=16), ALL + "; SmallGroup(16,9)")
add("C4xC2^2", b("abelian", factors=[4, 2, 2]), ALL + "; SmallGroup(16,10)")
add("C2xD8", prod(b("cyclic", n=2), b("dihedral", order=8)), ALL + "; SmallGroup(16,11)")
add("C2xQ8", prod(b("cyclic", n=2), b("quaternion", order=8)), ALL + "; SmallGroup(16,12)")
add("C4oD8", {"generators": pauli()}, ALL + "; SmallGroup(16,13), Pauli group <X, Z, iI> on the 8 vectors i^k e_j")
add("C2^4", b("abelian", factors=[2, 2, 2, 2]), ALL + "; SmallGroup(16,14)")
# 18
add("D18", b("dihedral", order=18), ALL)
add("C18", b("cyclic", n=18), ALL)
add("C3xS3", prod(b("cyclic", n=3), b("symmetric", n=3)), ALL)
add("(C3xC3):C2", {"generators": ["(1,2,3)", "(4,5,6)", "(2,3)(5,6)"]}, ALL + "; generalised dihedral of C3^2")
add("C6xC3", b("abelian", factors=[6, 3]), ALL)
# 20, 21, 22
add("Dic20", b("dicyclic", order=20), ALL)
add("C20", b("cyclic", n=20), ALL)
add("F20", b("semidirect", n=5, m=4, r=2), ALL + "; Frobenius group C5:C4")
add("D20", b("dihedral", order=20), ALL)
add("C10xC2", b("abelian", factors=[10, 2]), ALL)
add("C21", b("cyclic", n=21), ALL)
add("C7:C3", b("semidirect", n=7, m=3, r=2), ALL)
add("C22", b("cyclic", n=22), ALL)
add("D22", b("dihedral", order=22), ALL)
# 24
add("C3:C8", b("semidirect", n=3, m=8, r=2), ALL + "; SmallGroup(24,1)")
add("C24", b("cyclic", n=24), ALL + "; SmallGroup(24,2)")
add("SL2(3)", b("sl2", q=3), ALL + "; SmallGroup(24,3)", expected_ch=[2], expected_c=[])
add("Dic24", b("dicyclic", order=24), ALL + "; SmallGroup(24,4)")
add("C4xS3", prod(b("cyclic", n=4), b("symmetric", n=3)), ALL + "; SmallGroup(24,5)")
add("D24", b("dihedral", order=24), ALL + "; SmallGroup(24,6)")
add("C2xDic12", prod(b("cyclic", n=2), b("dicyclic", order=12)), ALL + "; SmallGroup(24,7)")
add("C3:D8", {"generators": ["(1,2,3)", "(5,7)", "(4,6)(5,7)", "(1,2)(4,5,6,7)"]}, ALL + "; SmallGroup(24,8), fibre product of S3 and D8 over C2 with kernel C2^2")
add("C12xC2", b("abelian", factors=[12, 2]), ALL + "; SmallGroup(24,9)")
add("C3xD8", prod(b("cyclic", n=3), b("dihedral", order=8)), ALL + "; SmallGroup(24,10)")
add("C3xQ8", prod(b("cyclic", n=3), b("quaternion", order=8)), ALL + "; SmallGroup(24,11)", expected_ch=[2, 2])
add("S4", b("symmetric", n=4), ALL + "; SmallGroup(24,12)", expected_ch=[])
add("C2xA4", prod(b("cyclic", n=2), b("alternating", n=4)), ALL + "; SmallGroup(24,13)")
add("C2^2xS3", prod(b("abelian", factors=[2, 2]), b("symmetric", n=3)), ALL + "; SmallGroup(24,14)")
add("C6xC2^2", b("abelian", factors=[6, 2, 2]), ALL + "; SmallGroup(24,15)")

FAM = "2-group and 3-group families"
for o in (32, 64):
    add(f"D{o}", b("dihedral", order=o), FAM)
    add(f"Q{o}", b("quaternion", order=o), FAM)
    add(f"SD{o}", b("semidihedral", order=o), FAM)
    add(f"M{o}", b("modular", order=o), FAM)
add("Q8xC2^2", prod(b("quaternion", order=8), b("abelian", factors=[2, 2])), FAM)
add("Q8xQ8", prod(b("quaternion", order=8), b("quaternion", order=8)), FAM)
add("Q8xC4", prod(b("quaternion", order=8), b("cyclic", n=4)), FAM)
add("Heis(3)", b("heisenberg", p=3), FAM + "; extraspecial 3^(1+2) of exponent 3")
add("C9:C3", b("semidirect", n=9, m=3, r=4), FAM + "; extraspecial 3^(1+2) of exponent 9")
add("C27", b("cyclic", n=27), FAM)
add("C9xC3", b("abelian", factors=[9, 3]), FAM)
add("C3^3", b("abelian", factors=[3, 3, 3]), FAM)

MISC = "worked examples and further test groups"
add("C3xSL2(3)", prod(b("cyclic", n=3), b("sl2", q=3)), MISC + "; smallest group where Perm is not diagonal in the Berz basis")
add("Dic12xC3", prod(b("dicyclic", order=12), b("cyclic", n=3)), MISC)
add("GL2(3)", b("gl2", q=3), MISC, expected_ch=[])
add("PGL2(3)", b("pgl2", q=3), MISC, expected_ch=[])
add("C7:C6", b("semidirect", n=7, m=6, r=3), MISC)
add("S5", b("symmetric", n=5), MISC)
add("A5", b("alternating", n=5), MISC, expected_ch=[])
add("A6", b("alternating", n=6), MISC)
add("S6", b("symmetric", n=6), MISC)
add("SL2(5)", b("sl2", q=5), MISC)
add("SL2(7)", b("sl2", q=7), MISC)
add("PSL2(7)", b("psl2", q=7), MISC, expected_ch=[])

out = pathlib.Path(__file__).resolve().parent.parent / "fixtures" / "corpus.json"
out.write_text(json.dumps({"groups": groups}, indent=1) + "\n")
print(len(groups), "groups written to", out)
