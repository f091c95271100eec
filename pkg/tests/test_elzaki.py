import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from ezcipher.elzaki import (
    CipherAudio,
    EncryptionKey,
    decrypt,
    elzaki_multiplier,
    elzaki_of_monomial_oracle,
    encrypt,
    real_mod,
)
from ezcipher.errors import (
    EmptyInputError,
    InvalidModulusError,
    InvalidSampleError,
    KeyMismatchError,
    ParameterError,
)
from ezcipher.fixtures import speech_fixture
from ezcipher.lorenz import LorenzConfig, LorenzState
from ezcipher.metrics import correlation

SCALE0 = LorenzConfig(scale=0.0)


class TestMultiplier:
    @pytest.mark.parametrize("n,expected", [(0, 2), (1, 6), (9, 110)])
    def test_known_values(self, n, expected):
        assert elzaki_multiplier(n) == expected

    def test_equals_factorial_ratio(self):
        for n in range(200):
            assert elzaki_multiplier(n) == math.factorial(n + 2) // math.factorial(n)

    def test_rejects_negative(self):
        with pytest.raises(ParameterError):
            elzaki_multiplier(-1)


class TestMonomialOracle:
    def test_constant(self):
        # transform of 1 at s is s^2
        assert elzaki_of_monomial_oracle(0, 0.5) == pytest.approx(0.25, rel=1e-9)

    def test_square(self):
        # transform of t^2 at s is 2! * s^4
        assert elzaki_of_monomial_oracle(2, 0.5) == pytest.approx(0.125, rel=1e-6)

    def test_fifth_power(self):
        expected = math.factorial(5) * 0.3 ** 7
        assert expected == pytest.approx(0.0262440, abs=5e-8)
        assert elzaki_of_monomial_oracle(5, 0.3) == pytest.approx(expected, rel=1e-6)

    @pytest.mark.parametrize("s", [0.3, 0.5])
    def test_multiplier_law_matches_transform(self, s):
        # (n+1)(n+2) must equal the transform of t^(n+2) divided by n!*s^(n+4):
        # this pins the coefficient law to the integral definition.
        for n in range(9):
            implied = elzaki_of_monomial_oracle(n + 2, s) / (math.factorial(n) * s ** (n + 4))
            assert implied == pytest.approx(elzaki_multiplier(n), rel=1e-6)

    def test_preconditions(self):
        with pytest.raises(ParameterError):
            elzaki_of_monomial_oracle(13, 0.5)
        with pytest.raises(ParameterError):
            elzaki_of_monomial_oracle(-1, 0.5)
        with pytest.raises(ParameterError):
            elzaki_of_monomial_oracle(2, 0.0)
        with pytest.raises(ParameterError):
            elzaki_of_monomial_oracle(2, 1.5)


class TestRealMod:
    @pytest.mark.parametrize("q,n,expected", [
        (2.0, 1.0, (0.0, 2)),
        (-1.5, 0.5, (0.0, -3)),
        (7.25, 2.0, (1.25, 3)),
    ])
    def test_hand_examples(self, q, n, expected):
        assert real_mod(q, n) == expected

    def test_invalid_modulus(self):
        with pytest.raises(InvalidModulusError):
            real_mod(1.0, 0.0)
        with pytest.raises(InvalidModulusError):
            real_mod(1.0, -2.0)

    @settings(max_examples=300, deadline=None)
    @given(
        q=st.floats(min_value=-1e12, max_value=1e12,
                    allow_nan=False, allow_infinity=False),
        modulus=st.floats(min_value=1e-6, max_value=1e6,
                          allow_nan=False, allow_infinity=False),
    )
    def test_contract(self, q, modulus):
        c, k = real_mod(q, modulus)
        assert isinstance(k, int)
        assert 0.0 <= c < modulus
        assert abs((c + modulus * k) - q) <= math.ulp(max(abs(q), modulus))


class TestEncrypt:
    def test_single_sample_hand_example(self):
        cipher, key = encrypt([1.0], SCALE0)
        assert key.modulus == 1.0
        assert cipher.c.tolist() == [0.0]
        assert key.k.tolist() == [2]

    def test_two_sample_hand_example(self):
        cipher, key = encrypt([0.5, -0.25], SCALE0)
        assert key.modulus == 0.5
        assert cipher.c.tolist() == [0.0, 0.0]
        assert key.k.tolist() == [2, -3]

    def test_empty_input(self):
        with pytest.raises(EmptyInputError):
            encrypt([], SCALE0)

    def test_non_finite_sample_names_index(self):
        with pytest.raises(InvalidSampleError) as exc_info:
            encrypt([0.1, 0.2, math.nan, 0.3], SCALE0)
        assert exc_info.value.index == 2

    def test_bad_block_size(self):
        with pytest.raises(ParameterError):
            encrypt([1.0], SCALE0, block_size=0)

    def test_records_framing(self):
        config = LorenzConfig(initial=LorenzState(0.3, 0.1, 0.2), skip=7)
        cipher, key = encrypt(np.ones(10), config, block_size=4,
                              sample_rate=8000, channels=2)
        assert cipher.block_size == key.block_size == 4
        assert cipher.sample_rate == 8000
        assert cipher.channels == 2
        assert key.lorenz == config
        assert cipher.length == key.length == 10

    def test_block_indices_reset(self):
        # Brute-force oracle: per-sample multiplier (j = n mod block) and
        # scalar floored reduction must reproduce the vector kernel exactly.
        x = np.linspace(-0.9, 0.9, 11)
        cipher, key = encrypt(x, SCALE0, block_size=4)
        n_mod = float(np.max(np.abs(x)))
        for n, sample in enumerate(x):
            q = elzaki_multiplier(n % 4) * sample
            c_ref, k_ref = real_mod(q, n_mod)
            assert cipher.c[n] == c_ref
            assert key.k[n] == k_ref

    def test_degenerate_silence(self):
        cipher, key = encrypt(np.zeros(100), SCALE0)
        assert key.modulus == 1.0
        assert np.array_equal(cipher.c, np.zeros(100))
        assert np.array_equal(key.k, np.zeros(100, dtype=np.int64))
        assert np.array_equal(decrypt(cipher, key), np.zeros(100))

    def test_residue_bound(self):
        x = np.sin(np.arange(5000) * 0.37)
        cipher, key = encrypt(x, LorenzConfig())
        assert cipher.c.min() >= 0.0
        assert cipher.c.max() < key.modulus


class TestDecrypt:
    def test_single_sample_inverse(self):
        cipher = CipherAudio(c=np.array([0.0]), block_size=65536,
                             sample_rate=44100, channels=1)
        key = EncryptionKey(lorenz=SCALE0, modulus=1.0,
                            k=np.array([2], dtype=np.int64), block_size=65536)
        assert decrypt(cipher, key).tolist() == [1.0]

    def test_two_sample_inverse(self):
        cipher = CipherAudio(c=np.array([0.0, 0.0]), block_size=65536,
                             sample_rate=44100, channels=1)
        key = EncryptionKey(lorenz=SCALE0, modulus=0.5,
                            k=np.array([2, -3], dtype=np.int64), block_size=65536)
        assert decrypt(cipher, key).tolist() == [0.5, -0.25]

    def test_sine_round_trip_with_default_key(self):
        x = np.sin(2.0 * np.pi * 440.0 * np.arange(1000) / 44100.0)
        cipher, key = encrypt(x, LorenzConfig())
        assert np.max(np.abs(decrypt(cipher, key) - x)) <= 1e-9

    def test_megasample_round_trip_at_default_block_size(self):
        # 2^20 samples crosses 16 block boundaries at the default block size
        x = np.sin(np.arange(1 << 20) * 0.003) * 0.9
        cipher, key = encrypt(x, LorenzConfig())
        assert np.max(np.abs(decrypt(cipher, key) - x)) <= 1e-9

    @settings(max_examples=50, deadline=None)
    @given(hnp.arrays(np.float64, st.integers(min_value=1, max_value=200),
                      elements=st.floats(min_value=-1.0, max_value=1.0,
                                         allow_nan=False)))
    def test_round_trip_property(self, x):
        cipher, key = encrypt(x, LorenzConfig(), block_size=8)
        assert np.max(np.abs(decrypt(cipher, key) - x)) <= 1e-9

    @settings(max_examples=50, deadline=None)
    @given(hnp.arrays(np.float64, st.integers(min_value=1, max_value=200),
                      elements=st.floats(min_value=-1.0, max_value=1.0,
                                         allow_nan=False)))
    def test_mod_identity_invariant(self, x):
        from ezcipher.lorenz import keystream

        cipher, key = encrypt(x, LorenzConfig(), block_size=16)
        y = x + keystream(LorenzConfig(), x.shape[0])
        for n in range(x.shape[0]):
            q = elzaki_multiplier(n % 16) * y[n]
            reconstructed = cipher.c[n] + key.modulus * key.k[n]
            assert 0.0 <= cipher.c[n] < key.modulus
            assert abs(reconstructed - q) <= math.ulp(max(abs(q), key.modulus))

    def test_key_sensitivity(self):
        signal = speech_fixture(n=10_000)
        cipher, key = encrypt(signal.samples, LorenzConfig())
        perturbed = EncryptionKey(
            lorenz=LorenzConfig(initial=LorenzState(0.02 + 1e-8, 0.02, 0.02)),
            modulus=key.modulus, k=key.k, block_size=key.block_size,
        )
        wrong = decrypt(cipher, perturbed)
        assert abs(correlation(signal.samples, wrong)) < 0.1

    def test_length_mismatch(self):
        cipher, key = encrypt(np.ones(8), SCALE0)
        short = CipherAudio(c=cipher.c[:4], block_size=cipher.block_size,
                            sample_rate=44100, channels=1)
        with pytest.raises(KeyMismatchError):
            decrypt(short, key)

    def test_block_size_mismatch(self):
        cipher, key = encrypt(np.ones(8), SCALE0, block_size=4)
        other = CipherAudio(c=cipher.c, block_size=8,
                            sample_rate=44100, channels=1)
        with pytest.raises(KeyMismatchError):
            decrypt(other, key)

    def test_invalid_modulus(self):
        cipher, key = encrypt(np.ones(8), SCALE0)
        broken = EncryptionKey(lorenz=key.lorenz, modulus=0.0, k=key.k,
                               block_size=key.block_size)
        with pytest.raises(InvalidModulusError):
            decrypt(cipher, broken)
