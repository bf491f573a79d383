"""Analytic solutions at t = 0 and the constant each correlation picks out.

The low-T correlations sit on one branch; the free coefficient that appears at t^(N+1)
is read off the correlation and converted to the lambda^2 coefficient.
"""
from isingpvi import boundary as bd
from isingpvi import painleve as pv
from isingpvi.series import qstr

for regime, pairs in (("low", [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3)]),
                      ("high", [(0, 2), (0, 4)])):
    for M, N in pairs:
        c = pv.corr_for_sigma(M, N, regime, 3 * N + 4)
        m = bd.match_lambda(c)
        print("%-4s C(%d,%d)  branch %s  free %s  lambda^2 coeff %s"
              % (regime, M, N, m.branch, m.to_json()["free"], qstr(m.lambda_coeff)))

# a generic point: the branch solution and its resonances
n = bd.Q("1/3"), bd.Q("2/5"), bd.Q("3/7"), bd.Q("5/6")
for br in bd.BRANCHES:
    try:
        sol = bd.solve_analytic(n, br, {}, 5)
        print(br, "c0..c3 =", [s for s in sol.to_json()["coeffs"][:4]])
    except bd.SeriesError as e:
        print(br, "->", e)
