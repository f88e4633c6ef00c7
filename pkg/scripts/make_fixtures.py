"""Regenerate the proof fixtures and the JSON schema documents."""

from pathlib import Path

from nablalab.jsonio import write_schemas
from nablalab.logic.equivalence import write_fixtures

ROOT = Path(__file__).resolve().parent.parent

if __name__ == "__main__":
    for path in write_fixtures() + write_schemas(ROOT / "docs" / "schemas"):
        print(path.relative_to(ROOT) if ROOT in path.parents else path)
