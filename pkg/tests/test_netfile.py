import numpy as np
import pytest

from diamondnet import (
    Network,
    RateTable,
    RelayChannels,
    ValidationError,
    from_network,
    from_rates,
    loads,
    rate_table,
)

GAINS_TEXT = """\
# two-relay example
label = demo
snr = 2.0
relay = 1.5 0.25   # gain_s gain_d
relay = 0.0 3.0
"""

RATES_TEXT = """\
label = rates-demo
snr = 4.0
rate = 1.0 3.0
rate = 2.5 0.0
"""


class TestParsing:
    def test_gains_form(self):
        nf = loads(GAINS_TEXT)
        assert nf.label == "demo"
        assert nf.network is not None and nf.rates is None
        assert nf.network.snr == 2.0
        assert nf.network.relays[0] == RelayChannels(1.5, 0.25)
        assert nf.n == 2

    def test_rates_form(self):
        nf = loads(RATES_TEXT)
        assert nf.rates is not None and nf.network is None
        assert nf.snr == 4.0
        assert nf.rates.r_s.tolist() == [1.0, 2.5]

    def test_rates_form_without_snr(self):
        nf = loads("rate = 1.0 2.0\n")
        assert nf.snr is None
        with pytest.raises(ValidationError):
            nf.to_network()

    def test_mixed_shapes_rejected(self):
        with pytest.raises(ValidationError):
            loads("snr = 1.0\nrelay = 1 1\nrate = 1 1\n")

    def test_empty_rejected(self):
        with pytest.raises(ValidationError):
            loads("label = nothing\n")

    def test_gains_form_needs_snr(self):
        with pytest.raises(ValidationError):
            loads("relay = 1 1\n")

    def test_unknown_key_rejected(self):
        with pytest.raises(ValidationError):
            loads("snr = 1.0\nrelais = 1 1\n")

    def test_malformed_pair_rejected(self):
        with pytest.raises(ValidationError):
            loads("snr = 1.0\nrelay = 1.0\n")

    def test_comments_and_blanks_ignored(self):
        nf = loads("\n# header\nsnr = 1.0\n\nrelay = 1 2\n")
        assert nf.n == 1


class TestRoundTrip:
    def test_gains_round_trip_is_lossless(self):
        rng = np.random.default_rng(3)
        net = Network(
            snr=float(rng.uniform(0.1, 10)),
            relays=tuple(
                RelayChannels(float(a), float(b))
                for a, b in rng.uniform(0, 5, (6, 2))
            ),
        )
        back = loads(from_network(net, label="x").dumps())
        assert back.network.snr == net.snr
        assert back.network.relays == net.relays

    def test_rates_round_trip_is_lossless(self):
        rng = np.random.default_rng(5)
        rt = RateTable(rng.uniform(0, 20, 5), rng.uniform(0, 20, 5))
        back = loads(from_rates(rt, snr=2.5, label="y").dumps())
        assert np.array_equal(back.rates.r_s, rt.r_s)
        assert np.array_equal(back.rates.r_d, rt.r_d)
        assert back.snr == 2.5

    def test_to_rate_table_matches_conversion(self):
        nf = loads(GAINS_TEXT)
        rt = nf.to_rate_table()
        assert rt == rate_table(nf.network)

    def test_rates_file_to_network_round_trips(self):
        nf = loads(RATES_TEXT)
        net = nf.to_network()
        got = rate_table(net)
        np.testing.assert_allclose(got.r_s, nf.rates.r_s, rtol=1e-12, atol=1e-12)
        np.testing.assert_allclose(got.r_d, nf.rates.r_d, rtol=1e-12, atol=1e-12)
