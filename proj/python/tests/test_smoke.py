import math

import pytest

import rauzy


def test_digit_sources():
    assert rauzy.expand_rational(1, 3, 10, 10).tolist() == [3] * 10
    assert rauzy.champernowne(2, 8).tolist() == [1, 1, 0, 1, 1, 1, 0, 0]
    x = rauzy.uniform_random(3, 100, seed=4)
    assert len(x) == 100 and x.base == 3
    assert x == rauzy.uniform_random(3, 100, seed=4)
    assert rauzy.parse_digits(rauzy.format_digits(x)) == x


def test_bad_input_raises():
    with pytest.raises(ValueError):
        rauzy.DigitSeq(2, [0, 1, 2])
    with pytest.raises(rauzy.ParseError):
        rauzy.parse_digits("base=2\n01x\n")


def test_beta_ell_matches_bruteforce():
    for seed in range(10):
        x = rauzy.uniform_random(2, 128, seed=seed)
        for ell in (1, 2, 3):
            assert rauzy.beta_ell(x, ell) == rauzy.beta_ell_bruteforce(x, ell)
    with pytest.raises(rauzy.RefusalError):
        rauzy.beta_ell_bruteforce(rauzy.uniform_random(2, 64, seed=1), 5)


def test_profile_classification():
    zero = rauzy.DigitSeq(2, [0] * 4000)
    assert rauzy.noise_profile(zero, ell_max=3)["classification"] == "PreservingLike"
    x = rauzy.bernoulli_seq([0.75, 0.25], 200000, seed=1)
    prof = rauzy.noise_profile(x, ell_max=3)
    assert prof["classification"].startswith("Intermediate")
    assert abs(prof["upe"] - 0.25) < 0.01


def test_codec_roundtrip_and_errors():
    cp = rauzy.CodecParams(2, 5)
    assert (cp.ell, cp.w, cp.block_len) == (1601, 86, 1606)
    payload = [1, 0, 1, 1, 0]
    block = rauzy.encode_block(payload, cp) + payload
    assert rauzy.decode_block(block, cp) == payload
    u = rauzy.payload_track(rauzy.uniform_random(2, 5 * 30, seed=3), cp, 30)
    v = rauzy.build_v(u, cp, 30)
    assert max(rauzy.verify_block_errors(v, cp, 30)) <= 2
    assert rauzy.codec_beta(v, cp)["value"] < 5 / 1606 / 2


def test_measures():
    assert rauzy.measure_noise(2, 1, [0.75, 0.25], [[0.75, 0.25], [0.75, 0.25]]) == 0.25
    h = rauzy.entropy(2, 1, [0.5, 0.5], [[0.5, 0.5], [0.5, 0.5]])
    assert abs(h - math.log(2)) < 1e-12
    p, ent = rauzy.bernoulli_opt(2, 0.25)
    assert p == [0.75, 0.25]
    assert abs(ent - rauzy.binary_entropy(0.25)) < 1e-15
    a, c = 0.3, 0.2
    rho = rauzy.stationary([[1 - a, a], [c, 1 - c]])
    assert abs(rho[0] - c / (a + c)) < 1e-12
    with pytest.raises(rauzy.AmbiguityError):
        rauzy.stationary([[1, 0], [0, 1]])
    b = rauzy.dim_bounds(3, 2 / 3)
    assert abs(b["lower"] - 1) < 1e-12 and abs(b["upper"] - 1) < 1e-12
    r = rauzy.markov_search(2, 2, 0.1, 200)
    assert r["entropy"] >= rauzy.binary_entropy(0.1) - 1e-6
    assert r["noise"] <= 0.1 + 1e-9
