"""Check every correlation with N <= 4 against its sigma form of Painleve VI.

Each line reports the highest power of t through which the residual is exactly zero.
"""
import time

from isingpvi import painleve as pv

ORDER = 16

t0 = time.time()
for regime in ("low", "high"):
    for N in range(1, 5):
        for M in range(N + 1):
            for rec in pv.verify_ode(M, N, regime, ORDER):
                flag = "ok" if rec["order_verified"] >= ORDER else "RESIDUAL"
                print("%-4s C(%d,%d) %-11s zero through t^%-3d %s"
                      % (regime, M, N, rec["family"], rec["order_verified"], flag))
print("%.1fs" % (time.time() - t0))

# the generic Cosgrove fit recovers the same parameters from the series alone
c = pv.corr_for_sigma(0, 3, "low", 22)
s = pv.sigma_from_corr(c)
fit = pv.cosgrove_fit(s, 20)
print("fit for C(0,3) low:", fit.to_json()["params"])
form = pv.cosgrove_to_okamoto(fit.params, s)[0]
print("Okamoto n:", [str(x) for x in form.n])
