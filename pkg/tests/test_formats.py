import json

import numpy as np
import pytest

from krdecomp.division import verify_covering
from krdecomp.errors import CertificateError, FormatError
from krdecomp.formats import (
    certificate_from_json,
    certificate_to_json,
    check_against_monoid,
    load_certificate,
    load_input,
    monoid_from_elements,
    monoid_to_json,
    save_certificate,
)
from krdecomp.pipeline import krohn_rhodes
from krdecomp.tmonoid import MonoidAction, StateSet, full_transformation_monoid

DATA = __import__("pathlib").Path(__file__).resolve().parent.parent / "data"


def test_load_t3_file():
    tm = load_input(DATA / "t3.json")
    assert len(tm) == 27 and tm.n_states == 3
    assert list(tm.generator_names) == ["a", "b", "c"]


def test_load_dfa_and_action():
    dfa = load_input(DATA / "even_a_dfa.json")
    assert dfa.n_states == 3 and len(dfa) == 3  # identity, a, dead
    ma = load_input(DATA / "flipflop_action.json")
    assert isinstance(ma, MonoidAction)
    assert len(ma) == 3 and not ma.is_faithful()


def test_monoid_json_round_trip():
    t3 = full_transformation_monoid(3)
    back = load_input(json.dumps(monoid_to_json(t3)))
    assert set(back.elements) == set(t3.elements)


@pytest.mark.parametrize("text, needle", [
    ('{"states": ["p", "q"],\n "generators": {"a": [0, 2]}}', "generators.a"),
    ('{"states": [],\n "generators": {}}', "'states'"),
    ('{"states": ["p"],\n\n "generators": [1]}', ":3: field 'generators'"),
    ('{"states": ["p"], "transitions": {"a": [0]}, "alphabet": ["a", "b"]}', "no row for letter 'b'"),
    ('{"states": ["p", "q"],\n  "generators": {"a": [0, 1],}}', "<string>:2:"),
    ("[1, 2]", "top level"),
])
def test_parse_errors_name_line_and_field(text, needle):
    with pytest.raises(FormatError) as err:
        load_input(text)
    assert needle in str(err.value)


def test_missing_file():
    with pytest.raises(FormatError) as err:
        load_input(DATA / "nope.json")
    assert "cannot read" in str(err.value)


def test_monoid_from_elements_checks():
    s = StateSet.range(2)
    assert len(monoid_from_elements(s, [[0, 1], [1, 0]])) == 2
    with pytest.raises(CertificateError):
        monoid_from_elements(s, [[1, 0], [0, 1]])
    with pytest.raises(CertificateError):
        monoid_from_elements(s, [[0, 1], [0, 0], [1, 0]])
    with pytest.raises(CertificateError):
        monoid_from_elements(s, [[0, 1], [1, 0], [1, 0]])


@pytest.fixture(scope="module")
def t2_certificate():
    return krohn_rhodes(full_transformation_monoid(2)).total_certificate


def test_certificate_round_trip(tmp_path, t2_certificate):
    path = tmp_path / "c.json"
    save_certificate(t2_certificate, path)
    back = load_certificate(path)
    assert np.array_equal(back.phi, t2_certificate.phi)
    for a, b in zip(back.flats, t2_certificate.flats):
        assert np.array_equal(a, b)
    assert verify_covering(back).ok
    assert check_against_monoid(back, load_input(DATA / "t2.json")) is None


def test_certificate_tables_are_not_recomputed(t2_certificate):
    doc = certificate_to_json(t2_certificate)
    name = next(iter(doc["covers"]))
    flat = doc["covers"][name]["flat"]
    flat[0] = (flat[0] + 1) % len(flat)
    rep = verify_covering(certificate_from_json(doc))
    assert not rep.ok and rep.witness.reason == "cascade"


def test_certificate_version_and_format():
    doc = certificate_to_json(krohn_rhodes(full_transformation_monoid(2)).total_certificate)
    with pytest.raises(FormatError):
        certificate_from_json(dict(doc, version=99))
    with pytest.raises(FormatError):
        certificate_from_json(dict(doc, format="other"))
    broken = dict(doc)
    del broken["phi"]
    with pytest.raises(FormatError):
        certificate_from_json(broken)


def test_check_against_other_monoid(t2_certificate):
    t3 = load_input(DATA / "t3.json")
    assert "states" in check_against_monoid(t2_certificate, t3)
