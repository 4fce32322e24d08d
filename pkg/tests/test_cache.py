import json

from weblab.cache import MANIFEST, Cache, default_dir


def test_default_dir_follows_env(isolated_cache):
    assert default_dir() == isolated_cache


def test_round_trip_and_hit(tmp_path):
    c = Cache(tmp_path)
    calls = []

    def compute():
        calls.append(1)
        return b"payload"

    assert c.get_or_compute("poset-3x2", compute) == (b"payload", False)
    assert c.get_or_compute("poset-3x2", compute) == (b"payload", True)
    assert len(calls) == 1
    manifest = json.loads((tmp_path / MANIFEST).read_text())
    entry = manifest["entries"]["poset-3x2"]
    assert entry["bytes"] == 7 and len(entry["sha256"]) == 64


def test_corrupted_file_is_recomputed(tmp_path):
    c = Cache(tmp_path)
    c.put("k", b"good")
    (tmp_path / c.filename("k")).write_bytes(b"evil")
    assert c.get("k") is None
    assert c.get_or_compute("k", lambda: b"good") == (b"good", False)


def test_version_mismatch_forces_recompute(tmp_path):
    Cache(tmp_path, version="0.0.1").put("k", b"old")
    assert Cache(tmp_path, version="0.0.2").get("k") is None


def test_broken_manifest_is_ignored(tmp_path):
    (tmp_path / MANIFEST).write_text("{not json")
    c = Cache(tmp_path)
    assert c.get("k") is None
    c.put("k", b"x")
    assert c.get("k") == b"x"
