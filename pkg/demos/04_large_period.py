"""
A period of about a million
===========================

Generation is cheap even when brute-force correlation is out of reach.
"""
import time

import numpy as np

from fhseq import LazySequence, build_params, construct

start = time.perf_counter()
fh = construct(997, 1009)
print(f"L = {fh.L}, e = {fh.v}, built in {time.perf_counter() - start:.2f} s")

# every symbol is used, with the class sizes as counts
print(np.bincount(fh[0], minlength=fh.v))

# a single sequence can also be evaluated lazily, with O(p + q) memory
lazy = LazySequence(build_params(997, 1009), 3)
print(lazy[:20])
print(fh[3][:20])
