#!/usr/bin/env python3
"""Download the Maragal_1 matrix from the SuiteSparse Matrix Collection and
place it at data/Maragal_1.mtx, where the acceptance suite looks for it.

Run on a machine with internet access:

    python3 scripts/fetch_maragal1.py
"""

import io
import tarfile
import urllib.request
from pathlib import Path

URLS = [
    "https://suitesparse-collection-website.herokuapp.com/MM/NYPA/Maragal_1.tar.gz",
    "https://sparse.tamu.edu/MM/NYPA/Maragal_1.tar.gz",
]


def main():
    dest = Path(__file__).resolve().parents[1] / "data" / "Maragal_1.mtx"
    dest.parent.mkdir(exist_ok=True)
    last_error = None
    for url in URLS:
        try:
            print(f"fetching {url}")
            with urllib.request.urlopen(url, timeout=60) as resp:
                payload = resp.read()
            with tarfile.open(fileobj=io.BytesIO(payload), mode="r:gz") as tar:
                member = next(m for m in tar.getmembers()
                              if m.name.endswith("Maragal_1.mtx"))
                dest.write_bytes(tar.extractfile(member).read())
            print(f"wrote {dest}")
            return 0
        except Exception as exc:  # try the next mirror
            last_error = exc
            print(f"  failed: {exc}")
    print(f"could not fetch Maragal_1: {last_error}")
    return 1


if __name__ == "__main__":
    raise SystemExit(main())
