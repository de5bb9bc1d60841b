import pytest

from systems.database import ResultStore
from systems.errors import IoFailure
from systems.models import InputDocument, ResultRecord


def record(rows, sw_all_zero=True):
    return ResultRecord(dims=[1, 1], mode="Z2", rows=rows, sw_all_zero=sw_all_zero,
                        sw_numbers={"w1^2": 0, "w2": 0}, created_at="2024-01-01T00:00:00+00:00")


async def test_missing_store_is_empty(tmp_path):
    assert await ResultStore(tmp_path / "none.jsonl").load_records() == []


async def test_append_load_clear(tmp_path):
    store = ResultStore(tmp_path / "nested" / "results.jsonl")
    written = await store.append_records([record([[1, 0], [0, 1]]), record([[1, 1], [0, 1]])])
    assert written == 2

    loaded = await store.load_records()
    assert [r.rows for r in loaded] == [[[1, 0], [0, 1]], [[1, 1], [0, 1]]]
    assert loaded[0] == record([[1, 0], [0, 1]])

    await store.clear()
    assert await store.load_records() == []


async def test_malformed_line(tmp_path):
    path = tmp_path / "broken.jsonl"
    path.write_text('{"dims": [1, 1]}\n', encoding="utf-8")
    with pytest.raises(IoFailure):
        await ResultStore(path).load_records()


async def test_blank_lines_are_ignored(tmp_path):
    store = ResultStore(tmp_path / "r.jsonl")
    await store.append_records([record([[1, 0], [0, 1]])])
    with open(store.path, "a", encoding="utf-8") as f:
        f.write("\n")
    assert len(await store.load_records()) == 1


def test_input_document_round_trip(cyclic_square):
    doc = InputDocument.from_matrix(cyclic_square)
    assert doc.model_dump() == {"dims": [1, 1], "coefficients": "Z", "rows": [[1, 2], [1, 1]]}
    assert doc.to_matrix() == cyclic_square
