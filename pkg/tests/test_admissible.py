import random

import pytest

from treeburn import admissible as adm
from treeburn.admissible import AdmissibleSequence, Block, InducedSpec
from treeburn.burning import burning_number, is_m_burnable, verify_schedule
from treeburn.topology import (
    make_chain_topology,
    make_star_topology,
    make_tshape_topology,
)

from conftest import random_topology


CHAIN, CHAIN_LABELS = make_chain_topology(3, 3, 3, 3)
TSHAPE, TSHAPE_LABELS = make_tshape_topology(3, 3, 3, 3)
STAR, STAR_LABELS = make_star_topology(3)


def seq(text, labels=None):
    return adm.parse_compact(text, labels if labels is not None else CHAIN_LABELS)


def test_parse_and_format_round_trip():
    for text in ("A_B,C_D", "A_BC,D", "B_AC,D", "D_CB,A", "A,~,B_CD"):
        s = seq(text)
        assert adm.format_compact(s, CHAIN_LABELS, CHAIN) == text


def test_parse_block_lines():
    text = "block 1 root 0 members 0,1\nblock 2 empty\nblock 3 root 3 members 3,2\n"
    s = adm.parse_block_lines(text)
    assert s.length == 3
    assert s.blocks[1].empty
    assert s.blocks[2].root == 3


def test_validate_catches_errors():
    # not a partition: vertex C missing
    bad = AdmissibleSequence(
        blocks=(
            Block(vertex_set=frozenset({0, 1}), root=0),
            Block(vertex_set=frozenset({3}), root=3),
        )
    )
    assert any("partition" in e for e in adm.validate(CHAIN, bad))
    # disconnected block {A, C} in the chain A-B-C-D
    bad2 = AdmissibleSequence(
        blocks=(
            Block(vertex_set=frozenset({0, 2}), root=0),
            Block(vertex_set=frozenset({1, 3}), root=1),
        )
    )
    assert any("connected" in e for e in adm.validate(CHAIN, bad2))
    with pytest.raises(ValueError):
        adm.ensure_valid(CHAIN, bad2)


def test_signature_chain():
    s = seq("A_B,C_D")
    sig = adm.signature(CHAIN, s)
    a, b, c, d = (CHAIN_LABELS[x] for x in "ABCD")
    assert sig == {a: 1, b: 2, c: 2, d: 3}
    s2 = seq("B_AC,D")
    sig2 = adm.signature(CHAIN, s2)
    assert sig2 == {b: 1, a: 2, c: 2, d: 2}


def test_stage_counts_chain_example():
    # <A_B,C_D> on the 3,3,3,3 chain at m=6:
    # arms 2(m-2) + (1+1)(m-3) + 2(m-4), internal B-C: 2m-4, then rounds 4..6
    s = seq("A_B,C_D")
    s1 = adm.stage1_additions(CHAIN, s, 6)
    assert s1.total == 2 * 4 + 2 * 3 + 2 * 2 + 8
    # rounds 3..6 each add a segment of 2(m-i)+1 vertices
    s2 = adm.stage2_additions(s, 6)
    assert s2.rounds == (3, 4, 5, 6)
    assert s2.total == 7 + 5 + 3 + 1
    assert adm.induced_order(CHAIN, s, 6) == 52


def test_stage1_requires_m_above_signature():
    s = seq("A_B,C_D")
    with pytest.raises(ValueError):
        adm.stage1_additions(CHAIN, s, 3)


def test_star_single_block_order():
    s = adm.parse_compact("H", STAR_LABELS)
    # n(m-1) + 1 + (m-1)^2 with n = 3, m = 4
    assert adm.induced_order(STAR, s, 4) == 19


def test_induced_tree_order_and_witness():
    for text, m in (("A_B,C_D", 6), ("B_AC,D", 6), ("D_CB,A", 7)):
        s = seq(text)
        spec = InducedSpec(topology=CHAIN, sequence=s, m=m)
        tree = adm.induce_tree(spec)
        assert tree.order == adm.induced_order(CHAIN, s, m)
        sched = adm.witness_schedule(spec, tree)
        flags = verify_schedule(tree, sched)
        assert flags.is_burning_sequence
        assert len(sched.sources) == m


def test_induced_tree_burning_number_is_m():
    s = seq("A_B,C_D")
    spec = InducedSpec(topology=CHAIN, sequence=s, m=5)
    tree = adm.induce_tree(spec)
    assert burning_number(tree)[0] == 5


def test_reduction_example():
    # <A_BC, ~, ~, D> reduces toward <A_BCD>
    s = seq("A_BC,~,~,D")
    sites = list(adm._reduction_sites(CHAIN, s, adm.signature(CHAIN, s)))
    assert sites
    reduced = adm.canonicalize(CHAIN, s)
    assert adm.sequences_equal(reduced, seq("A_BCD"))
    assert adm.is_canonical(CHAIN, seq("A_BCD"))
    assert not adm.is_canonical(CHAIN, s)


def test_reductions_preserve_signature_and_order():
    for s in adm.enumerate_admissible(CHAIN, 4):
        sig = adm.signature(CHAIN, s)
        m = max(sig.values()) + 1
        order = adm.induced_order(CHAIN, s, m)
        cur = s
        while True:
            r = adm.reduce_once(CHAIN, cur)
            if r is None:
                break
            assert adm.signature(CHAIN, r) == sig
            assert adm.induced_order(CHAIN, r, m) == order
            cur = r


def test_canonical_unique_per_signature():
    for topo in (CHAIN, TSHAPE):
        by_key = {}
        for s in adm.enumerate_canonical(topo, 4):
            sig = adm.signature(topo, s)
            key = (tuple(sorted(sig.items())), s.trimmed().length)
            if key in by_key:
                assert adm.sequences_equal(by_key[key], s), key
            else:
                by_key[key] = s


def test_canonicalize_reaches_fixed_point(rng):
    for _ in range(30):
        topo = random_topology(rng, 4)
        seqs = adm.enumerate_admissible(topo, 3)
        s = seqs[rng.randrange(len(seqs))]
        c = adm.canonicalize(topo, s)
        assert adm.is_canonical(topo, c)
        assert adm.signature(topo, c) == adm.signature(topo, s)


def test_enumerate_admissible_all_valid():
    for s in adm.enumerate_admissible(TSHAPE, 3):
        assert adm.validate(TSHAPE, s) == []
