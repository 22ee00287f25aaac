"""Certify non-planarity of K5 from a single one-crossing diagram.

Runs the degree-4-vertex criterion at each of the five vertices, replays
every certificate through the independent verifier, and writes the first
one to data/k5_certificate.json so it can be checked again later with
``python -m graphknot verify``.
"""

import json
import pathlib
import sys
import time

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from graphknot import VertexOrientation, check_nonplanar, verify_certificate
from graphknot.gallery import k5_diagram


def main():
    d = k5_diagram()
    print(f"diagram: {len(list(d.vertices()))} vertices, {d.crossing_count} crossing")
    saved = None
    for v in d.vertices():
        if d.nodes[v].degree != 4:
            continue
        t0 = time.monotonic()
        cert = check_nonplanar(d, VertexOrientation(v, 0))
        dt = time.monotonic() - t0
        if cert is None:
            print(f"  vertex {d.nodes[v].label}: inconclusive ({dt:.3f}s)")
            continue
        check = verify_certificate(cert)
        links = [
            f"lk={rec.certificate.value:+d}" for rec in cert.per_assignment
        ]
        print(
            f"  vertex {d.nodes[v].label}: non-planar, "
            f"{len(cert.per_assignment)} assignments ({', '.join(links)}), "
            f"verifier {'ok' if check.ok else 'REJECTED'} ({dt:.3f}s)"
        )
        saved = saved or cert
    if saved is not None:
        out = pathlib.Path(__file__).resolve().parents[1] / "data" / "k5_certificate.json"
        out.write_text(json.dumps(saved.to_json(), indent=2, sort_keys=True) + "\n")
        print(f"wrote {out}")


if __name__ == "__main__":
    main()
