SHORT_RUN_SECS = 0.3
SCENARIO_IDS = ["reader-vs-remove-shift", "reader-vs-add-displacement", "add-duplicate-vs-shift", "stale-timestamp-add"]
