import pytest
from hypothesis import given, strategies as st

from prym_forge import seedfile
from prym_forge.cover import failures, validate
from prym_forge.ngonal import lift_action, sign_character
from prym_forge.search import SearchParameterError, attempt_budget, pair_genus, search_seeds

from conftest import seeds


def test_deterministic():
    first = search_seeds(4, 0, 10, count=1, seed=42)
    second = search_seeds(4, 0, 10, count=1, seed=42)
    assert [seedfile.dumps(r) for r in first.seeds] == [seedfile.dumps(r) for r in second.seeds]
    assert first.attempts == second.attempts


def test_n3_genus_one():
    rep = search_seeds(3, 1, 4, count=1, seed=7).seeds[0]
    assert not failures(validate(rep))


def test_parity_rejected():
    with pytest.raises(SearchParameterError):
        search_seeds(4, 0, 3)
    with pytest.raises(SearchParameterError):
        pair_genus(4, 0, 2)


def test_budget(monkeypatch):
    monkeypatch.setenv("PRYM_FORGE_ATTEMPTS", "7")
    assert attempt_budget() == 7
    result = search_seeds(6, 0, 14, count=50, seed=1)
    assert result.attempts == 7 and result.exhausted
    monkeypatch.setenv("PRYM_FORGE_ATTEMPTS", "many")
    with pytest.raises(SearchParameterError):
        attempt_budget()


def test_unbranched_odd_degree_over_torus_exhausts():
    # an odd-degree isogeny of elliptic curves is bijective on 2-torsion characters,
    # so every etale double cover of X is pulled back from Y
    result = search_seeds(3, 1, 0, count=1, seed=0, max_attempts=3000)
    assert not result.seeds and result.exhausted


def test_split_and_nonsplit_modes():
    for rep in seeds(4, 1, 4):
        assert not any(sign_character(rep).values()) and lift_action(rep).is_split
    for rep in seeds(4, 1, 4, split=False):
        assert any(sign_character(rep).values())


@given(st.integers(0, 10**6))
def test_seed_round_trip(k):
    rep = search_seeds(4, 1, 4, count=1, seed=k % 50).seeds[0]
    text = seedfile.dumps(rep)
    assert seedfile.dumps(seedfile.loads(text)) == text
    assert seedfile.loads(text) == rep


def test_parse_errors_have_positions():
    good = seedfile.dumps(seeds(4, 0, 10, count=1)[0])
    bad = good.replace("(0 ", "(0 0 ", 1)
    with pytest.raises(seedfile.SeedParseError) as err:
        seedfile.loads(bad)
    assert err.value.line is not None and err.value.column is not None
    line = bad.splitlines()[err.value.line - 1]
    assert "(0 0 " in line
    with pytest.raises(seedfile.SeedParseError) as err:
        seedfile.loads('{"degree": 4,\n  "branches": [}')
    assert err.value.line == 2
    with pytest.raises(seedfile.SeedParseError):
        seedfile.loads('{"degree": 3, "base_genus": 1, "handles": []}')
    with pytest.raises(seedfile.SeedParseError):
        seedfile.loads('{"format": "other", "degree": 3}')
