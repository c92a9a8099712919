import math

import pytest

from seqclt.sequences import (
    Blocks,
    Constant,
    Explicit,
    Periodic,
    Triples,
    block_index,
    generate,
    log2_multiplier,
    sequence_from_obj,
    sequence_to_obj,
)


def test_blocks_d4_placement():
    spec = Blocks(4)
    assert generate(spec, 4) == 3  # l=1 block [4, 5)
    assert generate(spec, 5) == 2
    assert generate(spec, 16) == 3  # l=2 block [16, 18)
    assert generate(spec, 17) == 3
    assert generate(spec, 18) == 2
    assert [generate(spec, k) for k in (64, 65, 66, 67)] == [3, 3, 3, 2]


def test_constant_everywhere():
    spec = Constant(2)
    assert all(generate(spec, k) == 2 for k in (1, 17, 1000, 2**31))


def test_triples_spike_placement():
    spec = Triples(b0=2, B=70, p0=10, r=2)
    assert [generate(spec, k) for k in (20, 21, 22, 23)] == [70, 70, 70, 2]
    assert [generate(spec, k) for k in (10, 11, 12, 13)] == [70, 70, 70, 2]
    assert generate(spec, 9) == 2


def test_block_index_examples():
    spec = Blocks(4)
    assert block_index(spec, 20) == 2
    assert block_index(spec, 64) == 3
    with pytest.raises(ValueError):
        block_index(spec, 3)


def test_log2_multiplier_constant():
    assert log2_multiplier(Constant(2), 10) == pytest.approx(10.0, rel=1e-6)
    assert log2_multiplier(Constant(3), 4) == pytest.approx(4 * math.log2(3), rel=1e-6)


def test_log2_multiplier_blocks():
    assert log2_multiplier(Blocks(4), 5) == pytest.approx(4 + math.log2(3), rel=1e-6)


def test_log2_multiplier_matches_direct_sum():
    specs = [
        Constant(5),
        Periodic((2, 3, 2, 5)),
        Triples(b0=2, B=11, p0=4, r=2),
        Blocks(1.7),
        Explicit((7, 2, 9), Periodic((2, 3))),
    ]
    for spec in specs:
        for n in (1, 2, 37, 300):
            direct = math.fsum(math.log2(generate(spec, k)) for k in range(1, n + 1))
            assert log2_multiplier(spec, n) == pytest.approx(direct, rel=1e-6)


def test_blocks_count_closed_form_matches_scan():
    for D in (1.7, 2.0, 4.0):
        spec = Blocks(D)
        for n in (1, 5, 50, 400):
            scan = sum(1 for k in range(1, n + 1) if generate(spec, k) == 3)
            assert spec.three_count(n) == scan


def test_triples_every_spike_is_three_long():
    spec = Triples(b0=2, B=9, p0=5, r=3)
    run = 0
    for k in range(1, 2000):
        if generate(spec, k) == 9:
            run += 1
        else:
            assert run in (0, 3)
            run = 0


def test_explicit_head_then_tail():
    spec = Explicit((4, 5), Periodic((2, 3)))
    assert [generate(spec, k) for k in range(1, 7)] == [4, 5, 2, 3, 2, 3]


def test_generate_values_always_at_least_two():
    specs = [
        Constant(2),
        Periodic((2, 9)),
        Triples(b0=3, B=80, p0=10, r=2),
        Blocks(4),
        Explicit((6,), Constant(2)),
    ]
    for spec in specs:
        assert all(generate(spec, k) >= 2 for k in range(1, 500))


def test_generate_is_pure():
    spec = Blocks(2.5)
    vals = [generate(spec, k) for k in range(1, 200)]
    assert vals == [generate(spec, k) for k in range(1, 200)]


@pytest.mark.parametrize(
    "bad",
    [
        lambda: Constant(1),
        lambda: Periodic(()),
        lambda: Periodic((2, 1)),
        lambda: Explicit((), Constant(2)),
        lambda: Triples(b0=2, B=2, p0=10, r=2),
        lambda: Triples(b0=2, B=5, p0=1, r=2),  # spikes would overlap
        lambda: Blocks(1.0),
    ],
)
def test_invalid_specs_rejected(bad):
    with pytest.raises(ValueError):
        bad()


def test_serialization_round_trips():
    specs = [
        Constant(2),
        Periodic((2, 3, 2, 5)),
        Triples(b0=2, B=80, p0=10, r=2),
        Blocks(4.0),
        Explicit((4, 5, 6), Explicit((2,), Blocks(1.9))),
    ]
    for spec in specs:
        assert sequence_from_obj(sequence_to_obj(spec)) == spec


def test_serialization_rejects_unknown_kind():
    with pytest.raises(ValueError):
        sequence_from_obj({"kind": "fancy"})
