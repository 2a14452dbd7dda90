"""Capture real service responses as frozen fixtures for the frontend tests.

Run from the repo root: python3 scripts/freeze_ui_fixtures.py
"""

import json
from pathlib import Path

from fastapi.testclient import TestClient

from gudie.service import create_app

OUT = Path(__file__).resolve().parent.parent / "frontend" / "tests" / "fixtures"


def dump(name: str, payload) -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / name).write_text(json.dumps(payload, indent=2) + "\n")
    print(f"wrote {name}")


def main() -> None:
    with TestClient(create_app()) as client:
        session = client.post("/sessions", json={"fixture": "example2"}).json()
        dump("session_example2.json", session)
        sid = session["session_id"]

        dump("summary_example2.json",
             client.get(f"/sessions/{sid}/summary").json())

        for k in (1.0, 0.7, 0.3, 0.0):
            body = client.post(f"/sessions/{sid}/graphunits",
                               json={"seeds": ["C1"], "k": k}).json()
            dump(f"units_example2_k{int(k * 100):03d}.json", body)

        dump("units_example2_reciprocal.json",
             client.post(f"/sessions/{sid}/graphunits",
                         json={"seeds": ["C1"], "theta": "reciprocal"}).json())

        dump("units_example2_two_seeds.json",
             client.post(f"/sessions/{sid}/graphunits",
                         json={"seeds": ["C1", "C2"]}).json())

        session3 = client.post("/sessions", json={"fixture": "example3"}).json()
        sid3 = session3["session_id"]
        client.post(f"/sessions/{sid3}/graphunits", json={"seeds": ["C1"]})
        dump("units_example3_default.json",
             client.post(f"/sessions/{sid3}/graphunits",
                         json={"seeds": ["C1"]}).json())
        dump("neighborhood_example3_m1.json",
             client.get(f"/sessions/{sid3}/neighborhood",
                        params={"node": "M1", "radius": 1}).json())
        dump("neighborhood_example3_c1.json",
             client.get(f"/sessions/{sid3}/neighborhood",
                        params={"node": "C1", "radius": 1}).json())


if __name__ == "__main__":
    main()
