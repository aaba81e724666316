"""Rewrite the checksum line of src/reflcat/data/psi_table.txt after editing it."""

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from reflcat.catalan import PSI_FILE, PsiExponentTable, _digest  # noqa: E402

path = ROOT / "src" / "reflcat" / "data" / PSI_FILE
lines = [l for l in path.read_text().splitlines() if not l.startswith("checksum:")]
body = [l.strip() for l in lines if l.strip() and not l.strip().startswith("#")]
lines.append(f"checksum: {_digest(body)}")
path.write_text("\n".join(lines) + "\n")
PsiExponentTable.parse(path.read_text())
print(path.read_text().splitlines()[-1])
