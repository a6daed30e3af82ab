"""A small reproducible sweep over schedules and iteration budgets.

Every run's seed is derived from its coordinates in the sweep, so the
experiment reproduces byte for byte; the same circuit index gives the
same circuit under both schedules, keeping the comparison paired.
The summary below groups runs and reports reduction-fraction
statistics; the last block prints gnuplot-ready columns.
"""

from pgopt import ExperimentConfig, gnuplot_series, run_experiment, summarize

config = ExperimentConfig(
    topologies=("grid:2x3",),
    gadget_counts=(8,),
    schedules=("linear", "geometric"),
    t0_values=(10.0,),
    iteration_range=(250, 2000, 250),
    circuits_per_point=6,
    repetitions=5,
)
print(f"{config.run_count()} runs "
      f"({len(config.iteration_values())} budgets x 2 schedules x 6 circuits)")

records = run_experiment(config)
rows = summarize(records, keys=("schedule", "iterations"))

print("\nschedule    iters   mean    p10    p50    p90")
for row in rows:
    schedule, iterations = row.key
    print(f"{schedule:10} {iterations:6d}  {row.mean:.3f}  {row.p10:.3f}  "
          f"{row.p50:.3f}  {row.p90:.3f}")

print("\ngnuplot columns (x mean p10 p90) for the linear schedule:")
linear = [row for row in rows if row.key[0] == "linear"]
for x, mean, p10, p90 in gnuplot_series(linear):
    print(f"  {x:6.0f} {mean:.4f} {p10:.4f} {p90:.4f}")

print("\nplot with: plot 'data' using 1:2 with lines, '' using 1:3:4 with filledcurves")
