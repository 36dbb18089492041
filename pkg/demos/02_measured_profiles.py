"""Bring your own measured data: CSV import, rescaling and alignment.

Profiles arrive as ``timestamp,power_kw`` CSV documents. This demo builds
a quarter-hour load document in memory, imports it, aligns it with an
hourly synthetic PV series, and dumps the first day of the dispatch trace.
"""

from datetime import datetime, timedelta

from storparity import (
    BatterySpec,
    ProfileKind,
    align,
    annual_balance,
    parse_profile_csv,
    scale_to_annual,
    simulate,
    synthesize_pv_profile,
    trace_to_csv,
)

# --- 1. A quarter-hour measured load document ----------------------------
# Flat 0.6 kW baseline with an evening bump, 35040 rows (one year at 15').
start = datetime(2019, 1, 1)
rows = ["timestamp,power_kw"]
for i in range(35040):
    ts = start + timedelta(minutes=15 * i)
    power = 0.6 + (0.9 if 18 <= ts.hour <= 21 else 0.0)
    rows.append(f"{ts.isoformat()},{power}")
document = "\n".join(rows) + "\n"

load = parse_profile_csv(document, kind=ProfileKind.LOAD)
print(f"imported load: {len(load)} steps of {load.step_hours} h, "
      f"{load.year_energy_kwh:.0f} kWh/year")

# Rescale the measured shape to a 7500 kWh household.
load = scale_to_annual(load, 7500.0)
print(f"rescaled to  : {load.year_energy_kwh:.1f} kWh/year")

# --- 2. Align hourly PV with the quarter-hour load -----------------------
pv = synthesize_pv_profile(4.0, 1591.61, step_hours=1.0)  # Spain-level yield
pv, load = align(pv, load)
print(f"aligned      : both at {pv.step_hours} h steps, {len(pv)} steps")

# --- 3. Dispatch and dump a trace fragment -------------------------------
trace = simulate(pv, load, BatterySpec(capacity_kwh=4.0))
balance = annual_balance(trace, pv.step_hours)
print(f"SCR {balance.scr:.3f}, SSR {balance.ssr:.3f}, "
      f"curtailed {balance.e_curtail:.0f} kWh/year")

csv_text = trace_to_csv(trace)
first_day = csv_text.splitlines()[: 1 + 96]
print("\nfirst trace rows:")
for line in first_day[:6]:
    print(" ", line)
print(f"  ... ({len(csv_text.splitlines()) - 1} rows total)")
