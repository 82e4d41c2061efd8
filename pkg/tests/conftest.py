import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

DATA_DIR = Path(__file__).resolve().parent.parent / "data" / "raw"


def uci_path(filename: str) -> Path:
    return DATA_DIR / filename
