# The BC_N chain at small beta = beta' = t approaches the D_N chain plus an end-site term.
import numpy as np

from dnchain.spinops import SpinConfig, impurity_defect

N, m = 3, 2
cfg = SpinConfig(m, N)
ts = np.logspace(-2, -8, 7)
defects = np.array([impurity_defect(N, cfg, 1, t) for t in ts])
for t, d in zip(ts, defects):
    print(f"t={t:.0e}  defect={d:.3e}")

# slope of log(defect) vs log(t): 1/2, so the approach is like sqrt(t)
slope = np.polyfit(np.log(ts), np.log(defects), 1)[0]
print("fitted exponent:", round(slope, 3))
print("without the end-site term:", impurity_defect(N, cfg, 1, 1e-8, corrected=False))
