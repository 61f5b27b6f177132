"""Write the hand-built layouts as node files next to the configs."""
from pathlib import Path

from hgrsim import fixtures as F

OUT = Path(__file__).resolve().parent.parent / "configs"

for name in ("line5", "uvoid", "twoarms", "uvoid_spur"):
    (OUT / f"{name}.nodes").write_text(getattr(F, name)().to_text())
    print(OUT / f"{name}.nodes")
