import numpy as np
import pytest

from permcode._validation import set_debug
from permcode.code_store import (
    CodeFormatError,
    CodeVerificationError,
    PermutationCode,
    format_code,
    parse_code,
    read_code,
    verify_rows,
    write_code,
)
from permcode.oracle import greedy_clique
from permcode.perm_core import cyclic_latin_square

from oracles import distance


def test_is_compatible_examples():
    assert PermutationCode(3, 3).is_compatible([2, 1, 3])
    code = PermutationCode(3, 3, [[1, 2, 3]])
    assert code.is_compatible([2, 3, 1])
    assert not code.is_compatible([1, 3, 2])


def test_is_compatible_length_mismatch():
    with pytest.raises(ValueError):
        PermutationCode(3, 3, [[1, 2, 3]]).is_compatible([1, 2])


def test_add_row_grows_to_latin_square():
    code = PermutationCode(3, 3)
    code.add_row([1, 2, 3])
    assert len(code) == 1
    code.add_row([2, 3, 1])
    assert len(code) == 2
    code.add_row([3, 1, 2])
    assert len(code) == 3
    assert code.verify() == (True, None)


def test_add_row_refuses_incompatible():
    code = PermutationCode(3, 3, [[1, 2, 3]])
    with pytest.raises(ValueError):
        code.add_row([1, 3, 2])
    assert len(code) == 1


def test_buffer_growth_keeps_rows():
    code = PermutationCode(4, 2)
    import itertools

    perms = list(itertools.permutations(range(1, 5)))
    for p in perms:
        code.add_row(p)
    assert len(code) == 24
    assert [tuple(r) for r in code.rows] == perms


def test_rows_are_read_only():
    code = PermutationCode(3, 3, [[1, 2, 3]])
    with pytest.raises(ValueError):
        code.rows[0, 0] = 3


def test_remove_random_rows(rng):
    code = greedy_clique(5, 3, rng)
    big = PermutationCode(5, 3, code.rows[:10])
    before = {tuple(r) for r in big.rows}
    big.remove_random_rows(3, rng)
    assert len(big) == 7
    assert {tuple(r) for r in big.rows} <= before
    assert big.verify()[0]

    pair = PermutationCode(3, 3, [[1, 2, 3], [2, 3, 1]])
    pair.remove_random_rows(1, rng)
    assert len(pair) == 1

    with pytest.raises(ValueError):
        pair.remove_random_rows(1, rng)
    with pytest.raises(ValueError):
        big.remove_random_rows(0, rng)


def test_remove_keeps_insertion_order(rng):
    rows = cyclic_latin_square(8)
    code = PermutationCode(8, 8, rows)
    code.remove_random_rows(4, rng)
    order = [next(i for i, r in enumerate(rows) if np.array_equal(r, kept)) for kept in code.rows]
    assert order == sorted(order)


def test_remove_is_uniform(rng):
    hits = np.zeros(6)
    trials = 6000
    for _ in range(trials):
        code = PermutationCode(6, 6, cyclic_latin_square(6))
        code.remove_random_rows(2, rng)
        kept = {int(r[0]) for r in code.rows}
        for first in range(1, 7):
            if first not in kept:
                hits[first - 1] += 1
    p = 2 / 6
    sigma = np.sqrt(trials * p * (1 - p))
    assert np.all(np.abs(hits - trials * p) < 5 * sigma)


def test_verify_examples():
    assert PermutationCode(6, 6, cyclic_latin_square(6)).verify() == (True, None)
    assert verify_rows([[1, 2, 3, 4], [2, 1, 4, 3]], 4) == (True, None)
    assert verify_rows([[1, 2, 3, 4], [1, 2, 4, 3]], 3) == (False, (1, 2, 2))


def test_verify_is_independent_of_kernel(rng):
    code = greedy_clique(6, 4, rng)
    rows = code.rows.tolist()
    ok = all(distance(a, b) >= 4 for i, a in enumerate(rows) for b in rows[i + 1:])
    assert ok and code.verify()[0]


def test_round_trip(tmp_path, rng):
    code = greedy_clique(6, 5, rng)
    path = tmp_path / "code.txt"
    write_code(path, code, comments=["made in a test"])
    text = path.read_text()
    assert text.endswith("\n")
    assert text.splitlines()[1] == f"6 5 {len(code)}"
    assert read_code(path) == code


def test_format_is_bit_exact():
    code = PermutationCode(3, 3, [[1, 2, 3], [2, 3, 1]])
    assert format_code(code) == "3 3 2\n1 2 3\n2 3 1\n"


def test_comments_anywhere():
    code = parse_code("# header\n3 3 2\n1 2 3\n# between\n2 3 1\n")
    assert len(code) == 2


def test_parse_rejects_repeated_value():
    with pytest.raises(CodeFormatError) as err:
        parse_code("3 3 2\n1 2 3\n2 2 1\n")
    assert "row 2" in str(err.value)
    assert err.value.line == 3


def test_parse_rejects_close_pair():
    text = "4 3 3\n1 2 3 4\n2 1 4 3\n1 2 4 3\n"
    with pytest.raises(CodeVerificationError) as err:
        parse_code(text)
    assert err.value.pair == (1, 3)
    assert err.value.distance == 2


@pytest.mark.parametrize(
    "text",
    [
        "",
        "3 3\n1 2 3\n",
        "3 3 2\n1 2 3\n",
        "3 3 1\n1 2\n",
        "3 3 1\n1 2 x\n",
        "3 3 1\n1 2 3",
        "3 4 1\n1 2 3\n",
    ],
)
def test_parse_errors(text):
    with pytest.raises(CodeFormatError):
        parse_code(text)


def test_debug_mode_revalidates():
    set_debug(True)
    try:
        code = PermutationCode(3, 3)
        with pytest.raises(ValueError):
            code.add_row([1, 1, 3])
    finally:
        set_debug(False)
