"""Load a CSV, build log variables, and screen them for unit roots.

Walks the first stage of the workflow: ingestion with an explicit
missing-value policy, the log/difference transforms, ADF and PP tests
under both deterministic specifications, and the I(0)/I(1) verdict.
"""

import csv
import tempfile
from pathlib import Path

import numpy as np

from ardlkit import (
    Deterministic,
    IngestionConfig,
    RandomWalk,
    adf_test,
    classify_integration,
    difference,
    generate,
    load_csv,
    log_transform,
    pp_test,
)
from ardlkit.dataio import format_period

# Fabricate a macro-style file: a positive, trending "price" level
# observed monthly (exponential of a scaled random walk). In real use
# this is your own CSV.
walk = generate(RandomWalk(T=240, seed=102, drift=0.002))["Y"]
level = np.exp(0.05 * walk.values + 3.0)

workdir = Path(tempfile.mkdtemp())
csv_path = workdir / "prices.csv"
with csv_path.open("w", newline="") as fh:
    writer = csv.writer(fh)
    writer.writerow(["date", "P"])
    for period, value in zip(walk.index, level):
        writer.writerow([format_period(period, walk.frequency),
                         repr(float(value))])

ds = load_csv(csv_path, IngestionConfig(date_column="date",
                                        date_format="YYYY-MM",
                                        missing_policy="reject"))
prices = ds["P"]
first = format_period(prices.index[0], prices.frequency)
last = format_period(prices.index[-1], prices.frequency)
print(f"loaded {len(prices)} observations ({first} .. {last})")

ln_prices = log_transform(prices)
print(f"log series name: {ln_prices.name}")

d1 = difference(ln_prices, 1)
print(f"first difference has {len(d1)} observations\n")

# Both tests, both deterministic specs, level and difference.
for spec in (Deterministic.CONSTANT, Deterministic.CONSTANT_TREND):
    for label, s in (("level", ln_prices), ("diff ", d1)):
        adf = adf_test(s, spec)
        pp = pp_test(s, spec)
        print(f"{spec.value:20s} {label}: "
              f"ADF {adf.statistic:7.3f} (lags {adf.lag_or_bandwidth}), "
              f"PP {pp.statistic:7.3f} (bw {pp.lag_or_bandwidth}), "
              f"5% cv {adf.critical_values[0.05]:.3f}")

order = classify_integration(ln_prices)
print(f"\nintegration order of {ln_prices.name}: {order.order} "
      f"(alpha {order.alpha})")
print("level verdicts:     ", order.evidence[0].verdict_at)
print("difference verdicts:", order.evidence[1].verdict_at)
