"""Download the 2JWS structure to data/2jws.pdb for the crossing-count and timing checks."""

import sys
import urllib.request
from pathlib import Path

URLS = [
    "https://files.rcsb.org/download/2JWS.pdb",
    "https://www.ebi.ac.uk/pdbe/entry-files/download/pdb2jws.ent",
]


def main() -> int:
    dest = Path(__file__).resolve().parent.parent / "data" / "2jws.pdb"
    dest.parent.mkdir(exist_ok=True)
    for url in URLS:
        try:
            with urllib.request.urlopen(url, timeout=30) as resp:
                data = resp.read()
        except OSError as exc:
            print(f"{url}: {exc}", file=sys.stderr)
            continue
        dest.write_bytes(data)
        print(f"wrote {dest} ({len(data)} bytes)")
        return 0
    return 1


if __name__ == "__main__":
    sys.exit(main())
