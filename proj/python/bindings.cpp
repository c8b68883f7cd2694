#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "vspiker/checkpoint.hpp"
#include "vspiker/commands.hpp"
#include "vspiker/detector.hpp"
#include "vspiker/energy.hpp"
#include "vspiker/error.hpp"
#include "vspiker/grid_search.hpp"
#include "vspiker/interval_encoder.hpp"
#include "vspiker/lif.hpp"
#include "vspiker/metrics.hpp"
#include "vspiker/network.hpp"
#include "vspiker/stdp.hpp"
#include "vspiker/timeseries.hpp"

namespace py = pybind11;
using namespace vspiker;

namespace {

py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

nlohmann::json from_py(const py::object& o) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

TimeSeries make_series(std::vector<double> values, std::optional<std::vector<double>> timestamps,
                       std::optional<std::vector<bool>> labels) {
  TimeSeries s;
  s.values = std::move(values);
  if (timestamps) {
    if (timestamps->size() != s.values.size()) fail(ErrorCode::LengthMismatch, "timestamps and values differ in length");
    s.timestamps = std::move(*timestamps);
  } else {
    for (std::size_t i = 0; i < s.values.size(); ++i) s.timestamps.push_back(static_cast<double>(i));
  }
  if (labels) {
    if (labels->size() != s.values.size()) fail(ErrorCode::LengthMismatch, "labels and values differ in length");
    s.labels = std::move(*labels);
  }
  return s;
}

}  // namespace

PYBIND11_MODULE(_vacuum_spiker, m) {
  m.doc() = "Spiking-network anomaly detector for univariate time series";

  py::register_exception<Error>(m, "VacuumSpikerError");

  py::class_<TimeSeries>(m, "TimeSeries")
      .def(py::init(&make_series), py::arg("values"), py::arg("timestamps") = py::none(),
           py::arg("labels") = py::none())
      .def_readwrite("timestamps", &TimeSeries::timestamps)
      .def_readwrite("values", &TimeSeries::values)
      .def_readwrite("labels", &TimeSeries::labels)
      .def("__len__", &TimeSeries::size);

  m.def(
      "load_csv",
      [](const std::filesystem::path& path, const std::string& timestamp_column, const std::string& value_column) {
        CsvSchema schema;
        schema.timestamp_column = timestamp_column;
        schema.value_column = value_column;
        return load_csv(path, schema);
      },
      py::arg("path"), py::arg("timestamp_column") = "timestamp", py::arg("value_column") = "value");
  m.def(
      "apply_label_file",
      [](TimeSeries& s, const std::filesystem::path& path, const std::string& dataset) {
        apply_label_windows(s, load_label_windows(path, dataset));
      },
      py::arg("series"), py::arg("path"), py::arg("dataset") = "");
  m.def(
      "expanding_folds",
      [](const TimeSeries& s, std::size_t k) {
        std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, std::size_t>>> out;
        for (const auto& f : expanding_folds(s, k))
          out.push_back({{f.train_range.begin, f.train_range.end}, {f.test_range.begin, f.test_range.end}});
        return out;
      },
      py::arg("series"), py::arg("k"));

  py::class_<IntervalEncoder>(m, "IntervalEncoder")
      .def_static(
          "create",
          [](double lo, double hi, double fraction, std::optional<std::pair<double, double>> clamp,
             std::size_t max_neurons) {
            std::optional<Interval> c;
            if (clamp) c = Interval{clamp->first, clamp->second};
            return IntervalEncoder::create({lo, hi}, fraction, c, max_neurons);
          },
          py::arg("lo"), py::arg("hi"), py::arg("fraction"), py::arg("clamp") = py::none(),
          py::arg("max_neurons") = 100'000)
      .def("encode", &IntervalEncoder::encode)
      .def("lookup", &IntervalEncoder::lookup)
      .def_property_readonly("neuron_count", &IntervalEncoder::neuron_count)
      .def_property_readonly("interval_length", &IntervalEncoder::interval_length)
      .def("interval_of", [](const IntervalEncoder& e, std::size_t n) {
        const auto i = e.interval_of(n);
        return std::make_pair(i.lo, i.hi);
      });

  py::class_<LifParams>(m, "LifParams")
      .def(py::init<>())
      .def_readwrite("capacitance", &LifParams::capacitance)
      .def_readwrite("leak", &LifParams::leak)
      .def_readwrite("resting_potential", &LifParams::resting_potential)
      .def_readwrite("reset_potential", &LifParams::reset_potential)
      .def_readwrite("threshold", &LifParams::threshold)
      .def_readwrite("refractory_steps", &LifParams::refractory_steps);
  m.def("leak_for_time_constant", &leak_for_time_constant);
  m.def(
      "lif_trace",
      [](const LifParams& p, double v0, const std::vector<double>& inputs) {
        auto state = reset_layer(1, p);
        state.voltages[0] = v0;
        std::vector<double> out;
        for (double i : inputs) {
          const double in[] = {i};
          step(state, p, in);
          out.push_back(state.voltages[0]);
        }
        return out;
      },
      py::arg("params"), py::arg("v0"), py::arg("inputs"),
      "Voltage of a single neuron after each step of the given input currents.");

  py::class_<StdpParams>(m, "StdpParams")
      .def(py::init([](double a_minus, double a_plus, double tau_plus, double tau_minus) {
             return StdpParams{a_plus, a_minus, tau_plus, tau_minus};
           }),
           py::arg("a_minus") = -0.1, py::arg("a_plus") = 0.1, py::arg("tau_plus") = 1.051,
           py::arg("tau_minus") = 1.051)
      .def_readwrite("a_minus", &StdpParams::a_minus)
      .def_readwrite("a_plus", &StdpParams::a_plus);

  py::class_<SpikeSignal>(m, "SpikeSignal")
      .def_readonly("timestamps", &SpikeSignal::timestamps)
      .def_readonly("counts", &SpikeSignal::counts)
      .def_readonly("alerts", &SpikeSignal::alerts)
      .def("__len__", &SpikeSignal::size);

  py::class_<Network>(m, "Network")
      .def(py::init([](const IntervalEncoder& encoder, std::size_t neurons, bool recurrent, const LifParams& lif,
                       std::uint64_t seed) {
             NetworkConfig c;
             c.neurons = neurons;
             c.recurrent = recurrent;
             c.lif = lif;
             c.seed = seed;
             return Network::build(c, encoder);
           }),
           py::arg("encoder"), py::arg("neurons") = 100, py::arg("recurrent") = false,
           py::arg("lif") = LifParams{}, py::arg("seed") = 0)
      .def(
          "train",
          [](Network& net, const TimeSeries& s, const StdpParams& forward, std::optional<StdpParams> recurrent,
             int epochs) {
            TrainingOptions o;
            o.forward = forward;
            o.recurrent = recurrent;
            o.epochs = epochs;
            return train(net, s, o).spikes_per_epoch;
          },
          py::arg("series"), py::arg("forward"), py::arg("recurrent") = py::none(), py::arg("epochs") = 1)
      .def("run", &Network::run_series, py::arg("series"), py::arg("theta"))
      .def("infer_step",
           [](Network& net, double v, double theta) {
             const auto r = net.infer_step(v, theta);
             return std::make_tuple(r.alert, r.spike_count);
           })
      .def("reset_state", &Network::reset_state)
      .def_property_readonly("neurons", &Network::neurons)
      .def_property_readonly("input_count", &Network::input_count)
      .def_property_readonly("recurrent", &Network::recurrent)
      .def("forward_weights", [](const Network& n) { return n.forward_weights().data(); })
      .def("to_json", [](const Network& n) { return to_py(n.to_json()); })
      .def_static("from_json", [](const py::object& o) { return Network::from_json(from_py(o)); })
      .def("save", [](const Network& n, const std::filesystem::path& p) { save_checkpoint(p, n); })
      .def_static("load", [](const std::filesystem::path& p) { return load_checkpoint(p); })
      .def("__eq__", [](const Network& a, const Network& b) { return a == b; });

  m.def("classify_behaviour", [](bool recurrent, double a_minus, double a_plus) {
    return std::string(to_string(
        classify_behaviour(recurrent ? ConnectionKind::Recurrent : ConnectionKind::Forward, a_minus, a_plus)));
  });

  m.def("smooth", [](const std::vector<double>& s, std::size_t w) { return smooth(s, w); });
  m.def("threshold_grid", [](const std::vector<double>& s, std::size_t n) { return threshold_grid(s, n); });
  m.def("apply_threshold", [](const std::vector<double>& s, double t) { return apply_threshold(s, t); });

  m.def("auc", [](const std::vector<double>& s, const std::vector<bool>& l) { return auc(s, l); });
  m.def("youden_threshold",
        [](const std::vector<double>& s, const std::vector<bool>& l) { return youden_threshold(s, l); });
  m.def("confusion", [](const std::vector<bool>& a, const std::vector<bool>& l) {
    const auto c = confusion(a, l);
    return py::dict(py::arg("tp") = c.tp, py::arg("fp") = c.fp, py::arg("tn") = c.tn, py::arg("fn") = c.fn,
                    py::arg("g_mean") = g_mean(c), py::arg("f1") = f1(c));
  });
  m.def(
      "evaluate",
      [](const std::vector<double>& s, const std::vector<bool>& l, std::vector<std::size_t> windows,
         std::size_t threshold_count) {
        EvaluationOptions o;
        o.smoothing_windows = std::move(windows);
        o.threshold_count = threshold_count;
        return to_py(evaluate_run(s, l, o).to_json());
      },
      py::arg("signal"), py::arg("labels"), py::arg("smoothing_windows") = std::vector<std::size_t>{0, 100, 200, 300},
      py::arg("threshold_count") = 10);

  m.def("vacuum_macs_per_step", &vacuum_macs_per_step, py::arg("neurons"), py::arg("recurrent"),
        py::arg("layer_spikes"));
  m.def("model_macs", [](const py::object& spec) { return model_macs(architecture_from_json(from_py(spec))); });

  m.def("train_command", [](const std::filesystem::path& config) { return to_py(cmd_train(load_run_config(config))); });
  m.def("grid_search_command", [](const std::filesystem::path& config, std::optional<std::size_t> workers) {
    auto c = load_run_config(config);
    if (workers) c.workers = *workers;
    return cmd_grid_search(c);
  }, py::arg("config"), py::arg("workers") = py::none());
}
