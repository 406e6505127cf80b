from fractions import Fraction

from trophurwitz.cache import ResultCache

FIELDS = {"command": "real", "g": 0, "lambda": [5], "nu": [3, 1, 1], "signs": "-+"}


def test_put_get_across_instances(tmp_path):
    path = tmp_path / "c.jsonl"
    ResultCache(path).put(FIELDS, Fraction(3))
    assert ResultCache(path).get(FIELDS) == 3
    assert ResultCache(path).get(dict(FIELDS, signs="++")) is None


def test_append_only_and_last_wins(tmp_path):
    path = tmp_path / "c.jsonl"
    cache = ResultCache(path)
    cache.put(FIELDS, Fraction(1, 2))
    cache.put(FIELDS, Fraction(3))
    assert len(path.read_text().splitlines()) == 2
    assert ResultCache(path).get(FIELDS) == 3


def test_corrupt_lines_are_ignored(tmp_path):
    path = tmp_path / "c.jsonl"
    ResultCache(path).put(FIELDS, Fraction(3))
    good = path.read_text()
    tampered = good.replace('"num": 3', '"num": 4')
    path.write_text(tampered + "{not json\n")
    assert ResultCache(path).get(FIELDS) is None
    path.write_text(good + '{"truncated": \n')
    assert ResultCache(path).get(FIELDS) == 3


def test_from_env(tmp_path, monkeypatch):
    monkeypatch.delenv("TROPHURWITZ_CACHE", raising=False)
    assert ResultCache.from_env() is None
    monkeypatch.setenv("TROPHURWITZ_CACHE", str(tmp_path / "e.jsonl"))
    assert ResultCache.from_env().path == tmp_path / "e.jsonl"
