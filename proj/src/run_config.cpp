#include "vspiker/run_config.hpp"

#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "vspiker/error.hpp"
#include "vspiker/text.hpp"

namespace vspiker {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"run", {"seed", "out_dir", "workers"}},
      {"data",
       {"series", "labels", "dataset", "timestamp_column", "value_column", "label_column", "resample", "max_fill",
        "train_fraction"}},
      {"encoder",
       {"interval_fraction", "interval_length", "domain_min", "domain_max", "clamp_min", "clamp_max", "max_neurons"}},
      {"network",
       {"neurons", "recurrent", "threshold", "g_l", "membrane_time_constant", "resting_potential", "reset_potential",
        "refractory_steps", "capacitance", "init_mean", "init_std", "recurrent_init", "weight_min", "weight_max"}},
      {"stdp_forward", {"a_minus", "a_plus", "tau_plus", "tau_minus"}},
      {"stdp_recurrent", {"a_minus", "a_plus", "tau_plus", "tau_minus"}},
      {"training", {"epochs"}},
      {"detector", {"smoothing", "threshold"}},
      {"evaluation", {"threshold_count", "smoothing_windows", "folds", "rank_by"}},
      {"grid",
       {"forward_a_minus", "forward_a_plus", "recurrent_a_minus", "recurrent_a_plus", "recurrence", "neurons",
        "thresholds", "g_l", "membrane_time_constants", "interval_fractions", "epochs", "tau_plus", "tau_minus",
        "max_input_neurons"}},
  };
  return keys;
}

std::string where(const std::string& section, const std::string& key) { return "[" + section + "] " + key; }

double to_double(const std::string& section, const std::string& key, std::string_view text) {
  if (auto v = parse_double(text)) return *v;
  fail(ErrorCode::Config, where(section, key) + ": expected a number, got '" + std::string(text) + "'");
}

long long to_integer(const std::string& section, const std::string& key, std::string_view text) {
  const double v = to_double(section, key, text);
  if (v != static_cast<double>(static_cast<long long>(v)))
    fail(ErrorCode::Config, where(section, key) + ": expected an integer");
  return static_cast<long long>(v);
}

std::size_t to_count(const std::string& section, const std::string& key, std::string_view text) {
  const auto v = to_integer(section, key, text);
  if (v < 0) fail(ErrorCode::Config, where(section, key) + ": must be non-negative");
  return static_cast<std::size_t>(v);
}

bool to_bool(const std::string& section, const std::string& key, std::string_view text) {
  const auto t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  fail(ErrorCode::Config, where(section, key) + ": expected true/false, got '" + std::string(t) + "'");
}

std::vector<std::string> split_list(std::string_view text) {
  std::string s(trim(text));
  if (s.size() >= 2 && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
  std::vector<std::string> items;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto t = trim(item);
    if (!t.empty()) items.emplace_back(t);
  }
  return items;
}

class Sections {
 public:
  explicit Sections(const pt::ptree& tree) : tree_(tree) {
    for (const auto& [section, body] : tree) {
      const auto it = known_keys().find(section);
      if (it == known_keys().end()) fail(ErrorCode::Config, "unknown section [" + section + "]");
      if (body.empty() && !body.data().empty()) fail(ErrorCode::Config, "key '" + section + "' outside a section");
      for (const auto& [key, value] : body)
        if (!it->second.count(key)) fail(ErrorCode::Config, "unknown key " + where(section, key));
    }
  }

  std::optional<std::string> get(const std::string& section, const std::string& key) const {
    const auto s = tree_.get_child_optional(pt::ptree::path_type(section, '\0'));
    if (!s) return std::nullopt;
    const auto v = s->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
    if (!v) return std::nullopt;
    return std::string(trim(*v));
  }

  bool has_section(const std::string& section) const {
    return static_cast<bool>(tree_.get_child_optional(pt::ptree::path_type(section, '\0')));
  }

  template <class T, class F>
  void read(const std::string& section, const std::string& key, T& out, F convert) const {
    if (auto v = get(section, key)) out = convert(section, key, *v);
  }

  void number(const std::string& section, const std::string& key, double& out) const {
    read(section, key, out, to_double);
  }
  void number(const std::string& section, const std::string& key, std::optional<double>& out) const {
    if (auto v = get(section, key)) out = to_double(section, key, *v);
  }
  void count(const std::string& section, const std::string& key, std::size_t& out) const {
    read(section, key, out, to_count);
  }
  void flag(const std::string& section, const std::string& key, bool& out) const { read(section, key, out, to_bool); }

  template <class T, class F>
  void list(const std::string& section, const std::string& key, std::vector<T>& out, F convert) const {
    if (auto v = get(section, key)) {
      out.clear();
      for (const auto& item : split_list(*v)) out.push_back(static_cast<T>(convert(section, key, item)));
      if (out.empty()) fail(ErrorCode::Config, where(section, key) + ": empty list");
    }
  }

 private:
  const pt::ptree& tree_;
};

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_absolute() ? path : base / path;
}

StdpParams read_stdp(const Sections& s, const std::string& section, StdpParams p) {
  s.number(section, "a_minus", p.a_minus);
  s.number(section, "a_plus", p.a_plus);
  s.number(section, "tau_plus", p.tau_plus);
  s.number(section, "tau_minus", p.tau_minus);
  return p;
}

}  // namespace

RunConfig parse_run_config(const std::string& text, const std::filesystem::path& base_dir) {
  pt::ptree tree;
  try {
    std::istringstream in(text);
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    fail(ErrorCode::Config, std::string("config parse error: ") + e.what());
  }
  const Sections s(tree);
  RunConfig c;

  if (auto v = s.get("run", "seed")) c.seed = static_cast<std::uint64_t>(to_count("run", "seed", *v));
  if (auto v = s.get("run", "out_dir")) c.out_dir = resolve(base_dir, *v);
  s.count("run", "workers", c.workers);

  if (auto v = s.get("data", "series")) c.data.series = resolve(base_dir, *v);
  if (auto v = s.get("data", "labels")) c.data.labels = resolve(base_dir, *v);
  if (auto v = s.get("data", "dataset")) c.data.dataset = *v;
  if (auto v = s.get("data", "timestamp_column")) c.data.schema.timestamp_column = *v;
  if (auto v = s.get("data", "value_column")) c.data.schema.value_column = *v;
  if (auto v = s.get("data", "label_column")) c.data.schema.label_column = *v;
  s.flag("data", "resample", c.data.resample);
  s.count("data", "max_fill", c.data.max_fill);
  s.number("data", "train_fraction", c.data.train_fraction);
  if (!(c.data.train_fraction > 0.0 && c.data.train_fraction <= 1.0))
    fail(ErrorCode::Config, "[data] train_fraction must lie in (0, 1]");

  s.number("encoder", "interval_fraction", c.encoder.interval_fraction);
  s.number("encoder", "interval_length", c.encoder.interval_length);
  if (c.encoder.interval_fraction && c.encoder.interval_length)
    fail(ErrorCode::Config, "[encoder] set interval_fraction or interval_length, not both");
  s.number("encoder", "domain_min", c.encoder.domain_min);
  s.number("encoder", "domain_max", c.encoder.domain_max);
  s.number("encoder", "clamp_min", c.encoder.clamp_min);
  s.number("encoder", "clamp_max", c.encoder.clamp_max);
  if (c.encoder.clamp_min.has_value() != c.encoder.clamp_max.has_value())
    fail(ErrorCode::Config, "[encoder] clamp_min and clamp_max go together");
  s.count("encoder", "max_neurons", c.encoder.max_neurons);

  auto& n = c.network;
  s.count("network", "neurons", n.neurons);
  s.flag("network", "recurrent", n.recurrent);
  s.number("network", "threshold", n.lif.threshold);
  s.number("network", "g_l", n.lif.leak);
  if (auto v = s.get("network", "membrane_time_constant")) {
    if (s.get("network", "g_l")) fail(ErrorCode::Config, "[network] set g_l or membrane_time_constant, not both");
    n.lif.leak = leak_for_time_constant(to_double("network", "membrane_time_constant", *v));
  }
  s.number("network", "resting_potential", n.lif.resting_potential);
  s.number("network", "reset_potential", n.lif.reset_potential);
  if (auto v = s.get("network", "refractory_steps"))
    n.lif.refractory_steps = static_cast<int>(to_integer("network", "refractory_steps", *v));
  s.number("network", "capacitance", n.lif.capacitance);
  s.number("network", "init_mean", n.forward_init_mean);
  s.number("network", "init_std", n.forward_init_std);
  s.number("network", "recurrent_init", n.recurrent_init_offdiag);
  s.number("network", "weight_min", n.bounds.min);
  s.number("network", "weight_max", n.bounds.max);

  c.forward_stdp = read_stdp(s, "stdp_forward", c.forward_stdp);
  if (s.has_section("stdp_recurrent")) c.recurrent_stdp = read_stdp(s, "stdp_recurrent", StdpParams{-0.1, -0.1});
  if (auto v = s.get("training", "epochs")) c.epochs = static_cast<int>(to_integer("training", "epochs", *v));

  if (auto v = s.get("detector", "smoothing")) {
    const auto w = to_count("detector", "smoothing", *v);
    c.detector.smoothing_window = w == 0 ? std::nullopt : std::optional<std::size_t>(w);
  }
  s.number("detector", "threshold", c.detector.threshold);

  s.count("evaluation", "threshold_count", c.evaluation.threshold_count);
  s.list("evaluation", "smoothing_windows", c.evaluation.smoothing_windows, to_count);
  s.count("evaluation", "folds", c.folds);
  if (auto v = s.get("evaluation", "rank_by")) {
    const auto m = parse_rank_metric(*v);
    if (!m) fail(ErrorCode::Config, "[evaluation] rank_by must be g_mean, f1 or auc");
    c.rank_by = *m;
  }

  auto& g = c.grid;
  s.list("grid", "forward_a_minus", g.forward_a_minus, to_double);
  s.list("grid", "forward_a_plus", g.forward_a_plus, to_double);
  s.list("grid", "recurrent_a_minus", g.recurrent_a_minus, to_double);
  s.list("grid", "recurrent_a_plus", g.recurrent_a_plus, to_double);
  s.list("grid", "recurrence", g.recurrence, to_bool);
  s.list("grid", "neurons", g.neurons, to_count);
  s.list("grid", "thresholds", g.thresholds, to_double);
  s.list("grid", "g_l", g.leaks, to_double);
  if (s.get("grid", "membrane_time_constants")) {
    if (s.get("grid", "g_l")) fail(ErrorCode::Config, "[grid] set g_l or membrane_time_constants, not both");
    std::vector<double> taus;
    s.list("grid", "membrane_time_constants", taus, to_double);
    g.leaks.clear();
    for (double tau : taus) g.leaks.push_back(leak_for_time_constant(tau));
  }
  s.list("grid", "interval_fractions", g.interval_fractions, to_double);
  s.list("grid", "epochs", g.epochs, to_integer);
  s.number("grid", "tau_plus", g.tau_plus);
  s.number("grid", "tau_minus", g.tau_minus);
  s.count("grid", "max_input_neurons", g.max_input_neurons);
  // Fixed neuron constants follow the [network] section.
  g.base_lif = n.lif;
  g.forward_init_mean = n.forward_init_mean;
  g.forward_init_std = n.forward_init_std;
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    fail(ErrorCode::Config, std::string("cannot read config: ") + e.what());
  }
  return parse_run_config(text, path.has_parent_path() ? path.parent_path() : std::filesystem::path("."));
}

}  // namespace vspiker
