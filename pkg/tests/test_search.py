import random

import pytest
from hypothesis import given, settings, strategies as st

from hydrofold import energy as en
from hydrofold.energy import EnergyReport, FoldEnergy
from hydrofold.fold import embed, is_self_avoiding, parse_direction_string
from hydrofold.search import (
    ANNEAL,
    EXHAUSTIVE,
    GuardError,
    Schedule,
    SearchResult,
    anneal,
    enumerate_saw,
    rank_folds,
    reduced_prefixes,
)
from hydrofold.seq import BinaryProfile
from tests.oracles import all_saws, brute_force_min

FAST = Schedule(initial_temp=2.0, cooling_factor=0.99, steps=400)


def report_of(energies):
    return EnergyReport(
        tuple(FoldEnergy(i, e, True) for i, e in enumerate(energies, 1)), 0.0, en.DEFAULT_CONVENTIONS
    )


def hp(text):
    return BinaryProfile.from_hp(text)


def test_rank_folds_tie_break():
    assert rank_folds(report_of([5, 3, 3, 9]), 3).entries == ((2, 3), (3, 3), (1, 5))


def test_rank_folds_full_permutation():
    r = rank_folds(report_of([4, 1, 2, 8, 0]), 5)
    assert sorted(r.indices) == [1, 2, 3, 4, 5]
    assert r.indices == [5, 2, 3, 1, 4]


@pytest.mark.parametrize("k", [0, 5])
def test_rank_folds_bad_k(k):
    with pytest.raises(ValueError):
        rank_folds(report_of([1, 2, 3, 4]), k)


@given(st.lists(st.integers(-3, 3), min_size=1, max_size=30), st.floats(0.1, 100))
def test_rank_is_stable_and_scale_invariant(energies, factor):
    r = rank_folds(report_of(energies))
    es = [e for _, e in r]
    assert es == sorted(es)
    for (i1, e1), (i2, e2) in zip(r, r.entries[1:]):
        if e1 == e2:
            assert i1 < i2
    assert rank_folds(report_of([e * factor for e in energies])).indices == r.indices


def test_enumerate_two_residues(backend):
    r = enumerate_saw(hp("HH"), en.CONSECUTIVE_H)
    assert (r.best_energy, r.direction_string, r.visited) == (1.0, "R", 1)


def test_enumerate_hpph_contact(backend):
    r = enumerate_saw(hp("HPPH"), en.HP_CONTACT)
    assert (r.best_energy, r.direction_string, r.method) == (-1.0, "RUL", EXHAUSTIVE)


@pytest.mark.parametrize("variant", en.VARIANTS)
def test_enumerate_all_polar(variant, backend):
    r = enumerate_saw(hp("PPPPPP"), variant)
    assert r.best_energy == 0.0
    assert r.direction_string == "RRRRR"


@pytest.mark.parametrize("n_steps, count", [(1, 1), (2, 2), (3, 5)])
def test_reduced_counts(n_steps, count, backend):
    assert enumerate_saw(hp("H" * (n_steps + 1)), en.ALL_PAIRS_H).visited == count


@pytest.mark.parametrize("n_steps", range(1, 9))
def test_reduced_count_matches_unreduced(n_steps, backend):
    # straight walks have 4 images under the lattice symmetry group, the rest 8
    total = len(all_saws(n_steps))
    assert enumerate_saw(hp("H" * (n_steps + 1)), en.ALL_PAIRS_H).visited == 1 + (total - 4) // 8


def test_enumerate_guard():
    with pytest.raises(GuardError):
        enumerate_saw(hp("H" * 18), en.HP_CONTACT)
    with pytest.raises(GuardError):
        enumerate_saw(hp("H" * 6), en.HP_CONTACT, max_steps_guard=4)
    with pytest.raises(ValueError):
        enumerate_saw(hp("H"), en.HP_CONTACT)


@pytest.mark.parametrize("variant", en.VARIANTS)
def test_enumerate_matches_brute_force(variant, backend):
    rng = random.Random(7)
    for n in range(2, 8):
        bits = tuple(rng.randint(0, 1) for _ in range(n))
        best, _ = brute_force_min(bits, variant)
        r = enumerate_saw(BinaryProfile(bits, "t"), variant)
        assert abs(r.best_energy - best) <= 1e-12
        assert is_self_avoiding(r.best_steps)


def _reduced(walk):
    turned = walk.lstrip("R")
    return walk[0] == "R" and (not turned or turned[0] == "U")


def test_enumerate_lexicographic_tie_break():
    p = hp("HPPHPPH")
    best, _ = brute_force_min(p.bits, en.HP_CONTACT)
    optimal = sorted(
        w for w in all_saws(6)
        if _reduced(w) and en.free_energy(embed(parse_direction_string(w)), p, en.HP_CONTACT) == best
    )
    assert len(optimal) > 1
    assert enumerate_saw(p, en.HP_CONTACT).direction_string == optimal[0]


def test_anneal_deterministic():
    p = hp("HPHPPHHPHH")
    assert anneal(p, en.HP_CONTACT, FAST, seed=3) == anneal(p, en.HP_CONTACT, FAST, seed=3)


def test_anneal_two_residues():
    for sched in (FAST, Schedule(10.0, 0.5, 3)):
        r = anneal(hp("HH"), en.ALL_PAIRS_H, sched, seed=1)
        assert r.best_energy == 1.0
        assert r.method == ANNEAL and r.seed == 1


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**16), st.text(alphabet="HP", min_size=2, max_size=9), st.sampled_from(en.VARIANTS))
def test_anneal_bookkeeping_and_dominance(seed, text, variant):
    p = hp(text)
    seen = []
    r = anneal(p, variant, FAST, seed=seed, trace=seen.append)
    assert r.best_energy == min(seen)
    assert r.visited == len(seen)
    assert is_self_avoiding(r.best_steps)
    assert r.best_energy >= enumerate_saw(p, variant).best_energy


def test_schedule_validation():
    for bad in ((0, 0.9, 10), (1, 1.0, 10), (1, 0.0, 10), (1, 0.9, 0)):
        with pytest.raises(ValueError):
            Schedule(*bad)


def test_search_result_round_trip():
    r = enumerate_saw(hp("HPPH"), en.HP_CONTACT)
    assert SearchResult.from_dict(r.to_dict()) == r


def test_reduced_prefixes_partition_tree():
    p = hp("HPHHPPHPH")
    full = enumerate_saw(p, en.ALL_PAIRS_H)
    from hydrofold import kernels

    parts = [kernels.enumerate_from(p.bits, 1, pre) for pre in reduced_prefixes(4)]
    assert sum(v for _, _, v in parts) == full.visited
    assert min(e for e, _, _ in parts) == full.best_energy
