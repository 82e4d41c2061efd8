#!/usr/bin/env python3
"""Convert the raw UCI files in data/raw/ into normalized binary CSVs
(data/encoded/<name>.csv, label in the last column) ready for the CLI.

    python3 scripts/prepare_datasets.py [zoo digits spect soybean car]
"""

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from binnnms.ingest import dataset_summary, load_uci, write_binary_csv

RAW_DIR = Path(__file__).resolve().parent.parent / "data" / "raw"
OUT_DIR = Path(__file__).resolve().parent.parent / "data" / "encoded"

RAW_FILES = {
    "zoo": "zoo.data",
    "digits": "mfeat-pix",
    "spect": "spect.data",
    "soybean": "soybean-large.data",
    "car": "car.data",
}


def main() -> int:
    names = sys.argv[1:] or list(RAW_FILES)
    OUT_DIR.mkdir(parents=True, exist_ok=True)
    for name in names:
        raw = RAW_DIR / RAW_FILES[name]
        if not raw.exists():
            print(f"{name}: missing {raw} (run scripts/fetch_datasets.py first)")
            continue
        ds = load_uci(name, raw)
        out = OUT_DIR / f"{name}.csv"
        write_binary_csv(ds, out)
        print(f"{name}: {out}")
        print(json.dumps(dataset_summary(ds), indent=2, sort_keys=True))
    return 0


if __name__ == "__main__":
    sys.exit(main())
