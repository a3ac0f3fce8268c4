"""Invariant suites over the bundled registry plus a reproducible pool of
randomly generated small primitive substitutions."""

import random

import numpy as np
import pytest

import randsub as rs

POOL_SIZE = 100


def random_primitive_substitution(rng: random.Random) -> rs.RandomSubstitution:
    n = rng.choice((2, 2, 2, 3))
    letters = "abc"[:n]
    while True:
        lines = [f"alphabet: {' '.join(letters)}"]
        for letter in letters:
            k = rng.randint(1, 3)
            images = []
            for _ in range(k):
                length = rng.randint(1, 3)
                images.append("".join(rng.choice(letters) for _ in range(length)))
            images = list(dict.fromkeys(images))
            lines.append(f"rule {letter} -> " + " | ".join(images))
        sub = rs.parse_spec("\n".join(lines) + "\n")
        if rs.is_primitive(sub):
            return sub


@pytest.fixture(scope="module")
def pool():
    rng = random.Random(0xC0FFEE)
    return [random_primitive_substitution(rng) for _ in range(POOL_SIZE)]


@pytest.fixture(scope="module")
def registry():
    return [rs.get_example(name) for name in rs.example_names()]


def all_words_up_to(sub, length):
    words = [chr(i) for i in range(sub.n_letters)]
    frontier = list(words)
    for _ in range(length - 1):
        frontier = [w + chr(i) for w in frontier for i in range(sub.n_letters)]
        words.extend(frontier)
    return words


class TestRealisationProbabilities:
    def test_pool_sums_to_one(self, pool):
        for sub in pool:
            for u in all_words_up_to(sub, 2):
                total = sum(p for _w, p in rs.realisations(sub, u))
                assert total == pytest.approx(1.0, abs=1e-9)

    def test_registry_sums_to_one(self, registry):
        for sub in registry:
            for u in all_words_up_to(sub, 2):
                total = sum(p for _w, p in rs.realisations(sub, u))
                assert total == pytest.approx(1.0, abs=1e-9)


class TestLanguageInvariants:
    def test_pool_factor_and_substitution_closed(self, pool):
        for sub in pool:
            if rs.is_empty_subshift(sub):
                assert sub.max_image_len == 1
                continue
            table = rs.legal_words(sub, 5)
            for ell in range(2, 6):
                for w in table.words(ell):
                    assert w[1:] in table and w[:-1] in table
            for m in (1, 2):
                for u in table.words(m):
                    for v, _p in rs.realisations(sub, u):
                        for piece in rs.subwords(v, max_len=5):
                            assert piece in table

    def test_pool_submultiplicative(self, pool):
        for sub in pool:
            if rs.is_empty_subshift(sub):
                continue
            counts = rs.complexity(rs.legal_words(sub, 5), 5)
            for k in range(1, 5):
                for ell in range(1, 6 - k):
                    assert counts[k + ell - 1] <= counts[k - 1] * counts[ell - 1]

    def test_registry_submultiplicative(self, registry, tables):
        for sub, name in zip(registry, rs.example_names()):
            if rs.is_empty_subshift(sub):
                continue
            counts = rs.complexity(tables(name, 8), 8)
            for k in range(1, 8):
                for ell in range(1, 9 - k):
                    assert counts[k + ell - 1] <= counts[k - 1] * counts[ell - 1]


class TestInducedPrimitivity:
    def test_pool_induced_primitive_up_to_four(self, pool):
        for sub in pool:
            if rs.is_empty_subshift(sub):
                continue
            for ell in range(1, 5):
                ind = rs.induced_substitution(sub, ell)
                assert rs.induced_is_primitive(ind), rs.serialize(sub)

    def test_registry_induced_primitive_up_to_four(self, registry):
        for sub in registry:
            if rs.is_empty_subshift(sub):
                continue
            for ell in range(1, 5):
                assert rs.induced_is_primitive(rs.induced_substitution(sub, ell))


class TestCensusAndZeta:
    def test_pool_divisor_consistency_and_round_trip(self, pool):
        for sub in pool:
            if rs.is_empty_subshift(sub):
                continue
            n_max = 4 if sub.n_letters == 2 else 3
            census = rs.periodic_census(sub, n_max)
            for n in range(1, n_max + 1):
                for d in range(1, n):
                    if n % d == 0:
                        assert census.count(n) >= census.count(d)
            series = rs.zeta_series(census, n_max)
            back = rs.series_log(list(series.coefficients))
            np.testing.assert_allclose(back, series.log_terms, atol=1e-9)

    def test_registry_divisor_consistency(self, registry, tables):
        for sub, name in zip(registry, rs.example_names()):
            if rs.is_empty_subshift(sub):
                continue
            census = rs.periodic_census(sub, 4, 8, table=tables(name, 8))
            for n in range(1, 5):
                for d in range(1, n):
                    if n % d == 0:
                        assert census.count(n) >= census.count(d)


class TestPerronIdentities:
    def test_pool(self, pool):
        for sub in pool:
            m = rs.substitution_matrix(sub)
            if not rs.is_primitive_matrix((m > 0).astype(np.int64)):
                continue  # degenerate-support cases are not generated here
            pf = rs.perron_data(m)
            assert abs(pf.right.sum() - 1.0) < 1e-12
            assert abs(pf.left @ pf.right - 1.0) < 1e-12
            assert (pf.right > 0).all() and (pf.left > 0).all()
            assert pf.residual <= 1e-12 * max(1.0, pf.lam)
            np.testing.assert_allclose(m @ pf.right, pf.lam * pf.right, atol=1e-10)
            sums = m.sum(axis=0)
            assert sums.min() - 1e-9 <= pf.lam <= sums.max() + 1e-9

    def test_registry(self, registry):
        for sub in registry:
            pf = rs.perron_data(rs.substitution_matrix(sub))
            assert abs(pf.right.sum() - 1.0) < 1e-12
            assert abs(pf.left @ pf.right - 1.0) < 1e-12


class TestSamplerReproducibility:
    def test_pool_member_reports_are_pure(self, pool):
        sub = pool[0]
        if rs.is_empty_subshift(sub):
            sub = next(s for s in pool if not rs.is_empty_subshift(s))
        a = rs.frequency_report(sub, 1, 8, 2024)
        b = rs.frequency_report(sub, 1, 8, 2024)
        assert a == b
