"""
One binary search for every histogram
=====================================

The bin edges j/b of all candidate histograms are merged into one sorted
list of regions.  A region knows its bin in every histogram, so each
sample is located once and all histograms are filled from that lookup.
"""

import numpy as np

from rodian import assign_bins, build_lookup_table, normalize

table = build_lookup_table((2, 3, 4))
print(f"{table.n_regions} regions for b in {table.bin_counts}")
for lo, hi, bins in zip(table.edges[:-1], table.edges[1:], table.region_indices):
    print(f"  [{lo:.3f}, {hi:.3f})  ->  bins {tuple(int(i) for i in bins)}")

sample = normalize(np.array([3.0, 4.0, 5.5, 7.0, 11.0]))
print("\nnormalized:", np.round(sample.values, 3))
print("bin index per histogram:\n", assign_bins(sample, table))
