"""
Closed forms against brute force
================================

Every auto- and cross-correlation value is predicted from the cell containing
the shift. Here the predictions are checked at every shift for a few prime pairs.
"""
from fhseq import build_params, build_tables, build_partition, build_sequence_set
from fhseq import predict_averages, verify_correlation_distribution

for p, q in [(3, 5), (5, 17), (5, 13), (7, 13), (13, 37)]:
    prm = build_params(p, q)
    tables = build_tables(prm)
    fh = build_sequence_set(build_partition(tables))
    report = verify_correlation_distribution(fh, tables)
    print(f"p={p:>2} q={q:>2} e={prm.e:>2}  checks={report.total_checks:>6}  "
          f"mismatches={len(report.mismatches)}  {report.family_counts()}")
    print("    averages:", *predict_averages(prm))
