from importlib import resources
from pathlib import Path

DATA = Path(str(resources.files("divplan") / "data"))
TOYS = DATA / "toys"
