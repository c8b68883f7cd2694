import json
import math

import pytest

import vacuum_spiker as vs


def sine(n, amp=5.0):
    return vs.TimeSeries([10 + amp * math.sin(i / 8) for i in range(n)], [60.0 * i for i in range(n)])


def test_encoder_single_spike():
    enc = vs.IntervalEncoder.create(0.0, 10.0, 0.1)
    assert enc.neuron_count == 10
    assert enc.encode(4.2) == 4
    assert enc.encode(10.0) == 9
    enc.encode(12.5)
    assert enc.neuron_count == 13


def test_lif_decay_matches_closed_form():
    p = vs.LifParams()
    trace = vs.lif_trace(p, -60.0, [0.0] * 50)
    for t, v in enumerate(trace, start=1):
        assert v == pytest.approx(5 * math.exp(-t / 100) - 65, abs=1e-9)


def test_train_and_run_deterministic():
    lif = vs.LifParams()
    lif.threshold = -62.0

    def build():
        return vs.Network(vs.IntervalEncoder.create(5.0, 15.0, 0.1), neurons=30, lif=lif, seed=4)

    a, b = build(), build()
    fwd = vs.StdpParams(a_minus=-0.1, a_plus=-0.1)
    assert a.train(sine(300), fwd) == b.train(sine(300), fwd)
    assert a == b
    sig = a.run(sine(100), 0.0)
    assert len(sig) == 100


def test_metrics_and_energy():
    assert vs.auc([0.1, 0.4, 0.35, 0.8], [False, False, True, True]) == pytest.approx(0.75)
    assert vs.youden_threshold([0.1, 0.4, 0.35, 0.8], [False, False, True, True]) == 0.8
    assert vs.smooth([0, 4, 0, 0], 2) == [0, 2, 2, 0]
    assert vs.vacuum_macs_per_step(1000, False, 0) == 2000
    assert vs.model_macs([{"type": "dense", "inputs": 32, "outputs": 64}]) == 2048
    assert vs.classify_behaviour(True, -0.1, 0.1) == "balanced"
    c = vs.confusion([True, False], [True, False])
    assert c["g_mean"] == 1.0


def test_errors_are_typed():
    with pytest.raises(vs.VacuumSpikerError):
        vs.auc([1.0, 2.0], [True, True])


def test_train_command(tmp_path):
    csv = tmp_path / "s.csv"
    csv.write_text("timestamp,value\n" + "".join(f"{60 * i},{10 + 5 * math.sin(i / 8):.3f}\n" for i in range(120)))
    cfg = tmp_path / "c.ini"
    cfg.write_text(f"[run]\nseed = 1\nout_dir = {tmp_path / 'out'}\n[data]\nseries = {csv}\n"
                   "[network]\nneurons = 20\n[stdp_forward]\na_minus = 0.1\na_plus = 0.1\n")
    summary = vs.train_command(str(cfg))
    assert summary["behaviour"]["forward"] == "excitatory"
    assert json.loads((tmp_path / "out" / "training_summary.json").read_text()) == summary
