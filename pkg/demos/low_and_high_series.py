"""Print the first few terms of some two-point correlations, exactly.

Run:  python3 demos/low_and_high_series.py
"""
from isingpvi.correlations import corr_fw, corr_row
from isingpvi.series import T, K, qstr


def show(label, s, terms=6):
    var = T if s.is_even() else K
    j = s.to_json(var)
    parts = []
    for i, c in enumerate(j["coeffs"][:terms]):
        if c != "0":
            parts.append("%s %s^%d" % (c, var, j["valuation"] + i))
    print("%-16s %s + ..." % (label, " + ".join(parts)))


# below Tc everything is a series in t = k^2
for N in range(1, 5):
    show("C(0,%d) low" % N, corr_row(N, "low", 24).series)

# above Tc the row correlations start at t^(N/2)
for N in (2, 4):
    show("C(0,%d) high" % N, corr_row(N, "high", 24).series)

# M+N odd above Tc: C vanishes, C~ does not (odd powers of k)
show("C~(0,1) high", corr_fw(0, 1, "high", 16, tilde=True).series)
show("C(1,2) low", corr_fw(1, 2, "low", 24).series)
