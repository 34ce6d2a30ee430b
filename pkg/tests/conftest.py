import sys
from pathlib import Path

# allow running the suite from a checkout without installing
_src = Path(__file__).resolve().parents[1] / "src"
if str(_src) not in sys.path:
    sys.path.insert(0, str(_src))
