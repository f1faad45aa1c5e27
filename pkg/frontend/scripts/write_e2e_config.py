"""Write a scripted service config for the browser-client e2e suite.

Usage: python3 write_e2e_config.py PORT DATA_DIR OUT_PATH

Reuses the overprovisioned completion queues from the backend test fixtures
so one difficulty-1 session plays a full arc: a YES verdict on round 1
(completing the first objective and stocking the quiz pool), a quiz on
round 2, its evaluation on round 3, then teaching to the round budget.
"""

import json
import sys
from pathlib import Path

REPO_ROOT = Path(__file__).resolve().parents[2]
sys.path.insert(0, str(REPO_ROOT / "tests"))

from conftest import full_session_script  # noqa: E402

port, data_dir, out_path = int(sys.argv[1]), sys.argv[2], sys.argv[3]
config = {
    "port": port,
    "data_dir": data_dir,
    "provider": "scripted",
    "embedding": {"dim": 16},
    "script": full_session_script(
        1,
        "main",
        routes=["TEACH", "QUIZ"] + ["TEACH"] * 10,
        yes_rounds={1},
    ),
}
Path(out_path).write_text(json.dumps(config), encoding="utf-8")
print("ok")
