"""
Correlation profile and the classical bounds
============================================

Brute-force Hamming correlations, then how the set compares with three lower bounds.
"""
from fhseq import construct, correlation_profile, optimality_report

fh = construct(5, 17)
profile = correlation_profile(fh)

# autocorrelation of sequence 0 at the first few shifts; shift 0 is the peak L
print(profile.auto[0][:12])
print(profile.cross(0, 1)[:12])

print("H_a =", profile.H_a, " H_c =", profile.H_c)
print("A_a =", profile.A_a, " A_c =", profile.A_c)

report = optimality_report(profile, fh.params)
lg = report.bounds.lempel_greenberger[0]
print("Lempel-Greenberger:", lg.bound, "achieved", lg.achieved)

pf = report.bounds.peng_fan
print("Peng-Fan:", pf.lhs, ">=", pf.rhs, " minimal pairs", pf.pareto_pairs)

# the averages sit exactly on the average bound
av = report.bounds.average_bound
print("average bound:", av.lhs, "=", av.rhs)
print(report.verdicts())
