import json

import pytest

from fkalg.pipeline import Cache, CacheCorruption, finite_algebra, local_picture, presentation


def test_cache_round_trip(tmp_path):
    c = Cache(tmp_path)
    assert c.load("x", "k") is None
    c.store("x", "k", {"a": [1, 2]})
    assert c.load("x", "k") == {"a": [1, 2]}
    assert Cache(None).load("x", "k") is None


def test_results_agree_with_and_without_cache(tmp_path):
    pres = presentation("D", 3, 1, -1)
    plain = finite_algebra(pres)
    cache = Cache(tmp_path)
    first = finite_algebra(pres, cache=cache)
    again = finite_algebra(pres, cache=cache)
    for A in (first, again):
        assert A.basis == plain.basis and A.L == plain.L and A.R == plain.R
    lp0 = local_picture(pres, plain)
    lp1 = local_picture(pres, plain, cache)
    lp2 = local_picture(pres, plain, cache)
    assert lp0.local.to_json() == lp1.local.to_json() == lp2.local.to_json()


@pytest.mark.parametrize("damage", ["truncate", "wrong key", "bad payload"])
def test_corruption_is_reported(tmp_path, damage):
    pres = presentation("D", 3, 1, 1)
    cache = Cache(tmp_path)
    finite_algebra(pres, cache=cache)
    (path,) = tmp_path.glob("algebra-*.json")
    data = json.loads(path.read_text())
    if damage == "truncate":
        path.write_text(path.read_text()[:50])
    elif damage == "wrong key":
        data["key"] = "something else"
        path.write_text(json.dumps(data))
    else:
        data["value"] = {"schema": 1}
        path.write_text(json.dumps(data))
    with pytest.raises(CacheCorruption):
        finite_algebra(pres, cache=cache)


def test_presentation_families():
    assert presentation("E", 3).relations == presentation("D", 3, 0, 0).relations
    with pytest.raises(ValueError):
        presentation("X", 3)
