#!/usr/bin/env python3
"""Download the five UCI datasets used in the experiments into data/raw/.

Run from the repository root:

    python3 scripts/fetch_datasets.py [zoo digits spect soybean car]

Requires outbound network access to archive.ics.uci.edu; the repository
never bundles the data itself.
"""

import sys
import urllib.request
from pathlib import Path

BASE = "https://archive.ics.uci.edu/ml/machine-learning-databases"

FILES = {
    "zoo": [f"{BASE}/zoo/zoo.data"],
    "digits": [f"{BASE}/mfeat/mfeat-pix"],
    "spect": [f"{BASE}/spect/SPECT.train", f"{BASE}/spect/SPECT.test"],
    "soybean": [f"{BASE}/soybean/soybean-large.data"],
    "car": [f"{BASE}/car/car.data"],
}

RAW_DIR = Path(__file__).resolve().parent.parent / "data" / "raw"


def fetch(name: str) -> None:
    for url in FILES[name]:
        dest = RAW_DIR / url.rsplit("/", 1)[1]
        if dest.exists():
            print(f"  {dest.name}: already present")
            continue
        print(f"  {url} -> {dest}")
        urllib.request.urlretrieve(url, dest)


def main() -> int:
    names = sys.argv[1:] or list(FILES)
    unknown = [n for n in names if n not in FILES]
    if unknown:
        print(f"unknown dataset(s) {unknown}; choose from {list(FILES)}")
        return 1
    RAW_DIR.mkdir(parents=True, exist_ok=True)
    for name in names:
        print(f"{name}:")
        fetch(name)
    # spect ships as a train/test split; the experiments use the union
    train, test = RAW_DIR / "SPECT.train", RAW_DIR / "SPECT.test"
    if train.exists() and test.exists():
        combined = RAW_DIR / "spect.data"
        combined.write_text(train.read_text() + test.read_text())
        print(f"spect: combined -> {combined}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
