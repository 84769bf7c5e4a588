"""Write the shipped corpus as canonical JSON files.

Run from the repository root:

    python3 demos/export_corpus.py [target-dir]

then check the result with `ybe corpus --dir corpus`.
"""

import sys
from pathlib import Path

from ybe.cli import solution_document, write_document
from ybe.corpus import standard_corpus


def main() -> None:
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("corpus")
    target.mkdir(parents=True, exist_ok=True)
    for entry in standard_corpus():
        meta = {"name": entry.name, "provenance": entry.kind}
        if entry.note:
            meta["note"] = entry.note
        doc = solution_document(entry.solution, meta)
        write_document(doc, target / f"{entry.name}.json")
    print(f"wrote {len(standard_corpus())} files to {target}/")


if __name__ == "__main__":
    main()
