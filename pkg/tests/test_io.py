import json

import pytest

from simparadox import (
    Dataset,
    DocumentError,
    kidney_stones,
    load_dataset,
    load_distribution,
    save_dataset,
    save_distribution,
)
from simparadox.formats import SCHEMA_VERSION, distribution_document


def test_distribution_roundtrip_is_exact(reference_joint, tmp_path):
    path = tmp_path / "dist.json"
    save_distribution(reference_joint, path)
    loaded = load_distribution(path)
    assert loaded.n == reference_joint.n
    assert loaded.p_treated == reference_joint.p_treated
    assert loaded.probs == dict(reference_joint.probs)  # bit-exact, not approximate


def test_distribution_document_shape(reference_joint):
    document = distribution_document(reference_joint, provenance={"construction": "prop1"})
    assert document["schema_version"] == SCHEMA_VERSION
    assert document["n"] == 3
    assert len(document["entries"]) == 32
    entry = document["entries"][0]
    assert set(entry) == {"x", "a", "b", "p"}
    assert isinstance(entry["p"], str)
    assert len(entry["b"]) == 3
    assert document["provenance"]["construction"] == "prop1"


def test_distribution_save_is_deterministic(reference_joint, tmp_path):
    first, second = tmp_path / "a.json", tmp_path / "b.json"
    save_distribution(reference_joint, first)
    save_distribution(reference_joint, second)
    assert first.read_bytes() == second.read_bytes()


def _document_dict(joint):
    return distribution_document(joint)


def _write(tmp_path, document):
    path = tmp_path / "doc.json"
    path.write_text(json.dumps(document), encoding="utf-8")
    return path


def test_load_rejects_malformed_documents(reference_joint, tmp_path):
    bad_json = tmp_path / "bad.json"
    bad_json.write_text("{ not json", encoding="utf-8")
    with pytest.raises(DocumentError, match="JSON"):
        load_distribution(bad_json)

    with pytest.raises(DocumentError, match="cannot read"):
        load_distribution(tmp_path / "missing.json")

    document = _document_dict(reference_joint)
    document["schema_version"] = "999"
    with pytest.raises(DocumentError, match="schema_version"):
        load_distribution(_write(tmp_path, document))

    document = _document_dict(reference_joint)
    del document["entries"][0]
    with pytest.raises(DocumentError, match="expected 32"):
        load_distribution(_write(tmp_path, document))

    document = _document_dict(reference_joint)
    document["entries"][1] = dict(document["entries"][0])
    with pytest.raises(DocumentError, match="duplicate"):
        load_distribution(_write(tmp_path, document))

    document = _document_dict(reference_joint)
    document["entries"][0]["p"] = "not-a-number"
    with pytest.raises(DocumentError, match="unreadable"):
        load_distribution(_write(tmp_path, document))

    document = _document_dict(reference_joint)
    document["entries"][0]["p"] = "0.5"  # knocks the total far off 1
    with pytest.raises(DocumentError, match="sum"):
        load_distribution(_write(tmp_path, document))

    document = _document_dict(reference_joint)
    document["p_treated"] = "0.9"
    with pytest.raises(DocumentError, match="p_treated"):
        load_distribution(_write(tmp_path, document))


def test_load_absorbs_small_decimal_drift(reference_joint, tmp_path):
    # A document whose probabilities sum to 1 +/- ~1e-10 still loads,
    # renormalized back onto the internal tolerance.
    document = _document_dict(reference_joint)
    value = float(document["entries"][0]["p"])
    document["entries"][0]["p"] = f"{value + 2e-10:.17g}"
    loaded = load_distribution(_write(tmp_path, document))
    assert abs(sum(loaded.probs.values()) - 1.0) <= 1e-12


def test_dataset_roundtrip_exact(tmp_path):
    data = kidney_stones()
    path = tmp_path / "data.csv"
    save_dataset(data, path)
    loaded = load_dataset(path)
    assert loaded.n == data.n
    assert loaded.total == data.total
    assert loaded.counts == data.counts


def test_dataset_roundtrip_no_factors(tmp_path):
    data = Dataset.from_counts(0, {(1, 1): 7, (0, 1): 3, (1, 0): 4, (0, 0): 6})
    path = tmp_path / "plain.csv"
    save_dataset(data, path)
    assert path.read_text(encoding="utf-8").splitlines()[0] == "x,a,count"
    loaded = load_dataset(path)
    assert loaded.counts == data.counts


def test_dataset_csv_format(tmp_path):
    data = kidney_stones()
    path = tmp_path / "data.csv"
    save_dataset(data, path)
    raw = path.read_bytes()
    assert b"\r" not in raw  # LF line endings only
    lines = raw.decode("utf-8").splitlines()
    assert lines[0] == "x,a,b1,count"
    assert len(lines) == 1 + len(data.counts)


@pytest.mark.parametrize(
    "text,match",
    [
        ("", "empty"),
        ("a,x,count\n1,1,3\n", "header"),
        ("x,a,b2,count\n1,1,0,3\n", "header"),
        ("x,a,b1,count\n1,1,3\n", "expected 4 fields"),
        ("x,a,b1,count\n1,1,2,3\n", "bits"),
        ("x,a,b1,count\n1,1,0,-3\n", "negative"),
        ("x,a,b1,count\n1,1,0,3\n1,1,0,4\n", "duplicate"),
        ("x,a,b1,count\n1,1,0,zebra\n", "non-integer"),
        ("x,a,b1,count\n0,0,0,0\n", "positive"),
    ],
)
def test_dataset_load_rejects_malformed(text, match, tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(DocumentError, match=match):
        load_dataset(path)


def test_bundled_kidney_stone_counts():
    data = kidney_stones()
    assert data.n == 1
    assert data.total == 700
    assert data.count((1, 1, 1)) == 234
    assert data.count((1, 1, 0)) == 55
    assert data.count((1, 0, 1)) == 81
    assert data.count((1, 0, 0)) == 192
    treated = sum(v for k, v in data.counts.items() if k[1] == 1)
    assert treated == 350
