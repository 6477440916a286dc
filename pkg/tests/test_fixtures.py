import json
from pathlib import Path

import demazure
from helpers import FIXTURES

PACKAGED = Path(demazure.__file__).resolve().parent / "fixtures"


def test_packaged_copy_matches_source():
    src = {p.name: json.loads(p.read_text()) for p in FIXTURES.glob("*.json")}
    pkg = {p.name: json.loads(p.read_text()) for p in PACKAGED.glob("*.json")}
    assert src == pkg
    assert len(src) >= 30
