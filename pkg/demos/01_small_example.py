"""
Building a small hopping set
============================

Four sequences of length 85 over four frequencies, from p = 5 and q = 17.
"""
import numpy as np

from fhseq import build_params, build_tables, build_partition, build_sequence_set, cyclotomic_matrix

# the parameters follow from p and q alone; g is the smallest common primitive root
prm = build_params(5, 17)
print(prm)

# the unit group splits into e classes D_0..D_{e-1}; the rest of Z_85 is P, Q and {0}
tables = build_tables(prm)
for i, cls in enumerate(tables.classes):
    print(f"D{i}:", np.sort(cls)[:10], "...")
print("P:", tables.P)
print("Q:", tables.Q)

print(cyclotomic_matrix(tables))

# merge the leftovers into two of the classes and read each residue's class off as a symbol
partition = build_partition(tables)
print("cell sizes:", partition.sizes)

fh = build_sequence_set(partition)
print(fh.to_digits())
