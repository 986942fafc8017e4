#include "xroads/app/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "xroads/app/errors.hpp"

namespace xroads::app {

const char* to_string(Output o) {
  switch (o) {
    case Output::Outage:
      return "outage";
    case Output::Reception:
      return "reception";
    default:
      return "throughput";
  }
}

const char* to_string(Engines e) {
  switch (e) {
    case Engines::Analytic:
      return "analytic";
    case Engines::MonteCarlo:
      return "montecarlo";
    default:
      return "both";
  }
}

const char* to_string(Axis a) {
  switch (a) {
    case Axis::TxRxDistance:
      return "tx_rx_distance";
    case Axis::RxToIntersectionD:
      return "rx_to_intersection_d";
    case Axis::AccessProbability:
      return "access_probability";
    case Axis::AlohaP:
      return "aloha_p";
    default:
      return "csma_delta";
  }
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) {
    row[j] = j;
  }
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = up;
    }
  }
  return row[b.size()];
}

namespace {

const std::map<std::string, std::vector<std::string>, std::less<>> kSchema = {
    {"experiment", {"name", "outputs", "engines"}},
    {"scenario", {"lambda_h_per_m", "lambda_v_per_m", "mac", "aloha_p", "csma_delta_m"}},
    {"useful", {"norm", "amplitude", "alpha", "fading", "fading_theta", "fading_k", "fading_sigma_db"}},
    {"interferers_h", {"norm", "amplitude", "alpha", "fading", "fading_theta", "fading_k", "fading_sigma_db"}},
    {"interferers_v", {"norm", "amplitude", "alpha", "fading", "fading_theta", "fading_k", "fading_sigma_db"}},
    {"link",
     {"tx_x_m", "tx_y_m", "rx_x_m", "rx_y_m", "power_w", "power_dbm", "noise_w", "noise_dbm", "beta", "beta_db"}},
    {"sweep", {"axis", "values", "d_m", "aloha_p", "csma_delta_m", "tx_positions_m", "r_comm_m"}},
    {"montecarlo", {"realizations", "seed", "workers", "window_half_length_m", "far_field_compensation"}},
    {"analytic", {"lognormal_fit_samples", "lognormal_fit_seed", "max_outage"}},
};

// Key with its unit suffix removed: "lambda_h_per_m" -> "lambda_h".
std::string_view stem(std::string_view key) {
  for (std::string_view suffix : {"_per_m", "_dbm", "_db", "_m", "_w"}) {
    if (key.size() > suffix.size() && key.ends_with(suffix)) {
      return key.substr(0, key.size() - suffix.size());
    }
  }
  return key;
}

std::string nearest(std::string_view word, const std::vector<std::string>& candidates) {
  std::string best;
  std::size_t best_d = std::string::npos;
  for (const auto& c : candidates) {
    const std::size_t d = std::min(levenshtein(word, c), levenshtein(word, stem(c)));
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

class Document {
 public:
  Document(std::string_view text, std::string_view source) : source_(source) {
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto end = std::min(text.find('\n', pos), text.size());
      std::string_view raw = text.substr(pos, end - pos);
      pos = end + 1;
      ++line_no;
      const auto hash = raw.find_first_of("#;");
      const std::string line = trim(raw.substr(0, hash));
      if (line.empty()) {
        if (end == text.size()) {
          break;
        }
        continue;
      }
      if (line.front() == '[') {
        if (line.back() != ']') {
          throw ConfigParseError(source_, line_no, "unterminated section header");
        }
        section = trim(std::string_view(line).substr(1, line.size() - 2));
        const auto it = kSchema.find(section);
        if (it == kSchema.end()) {
          std::vector<std::string> names;
          for (const auto& [name, keys] : kSchema) {
            names.push_back(name);
          }
          throw SchemaError(source_ + ":" + std::to_string(line_no) + ": unknown section [" + section +
                            "]; did you mean [" + nearest(section, names) + "]?");
        }
        if (seen_sections_.count(section) != 0) {
          throw ConfigParseError(source_, line_no, "duplicate section [" + section + "]");
        }
        seen_sections_.insert({section, line_no});
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw ConfigParseError(source_, line_no, "expected 'key = value'");
      }
      if (section.empty()) {
        throw ConfigParseError(source_, line_no, "key outside of any [section]");
      }
      const std::string key = trim(std::string_view(line).substr(0, eq));
      const std::string value = trim(std::string_view(line).substr(eq + 1));
      if (key.empty()) {
        throw ConfigParseError(source_, line_no, "missing key before '='");
      }
      const auto& allowed = kSchema.at(section);
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        throw SchemaError(source_ + ":" + std::to_string(line_no) + ": unknown key '" + key + "' in [" +
                          section + "]; did you mean '" + nearest(key, allowed) + "'?");
      }
      auto& sec = entries_[section];
      if (sec.count(key) != 0) {
        throw ConfigParseError(source_, line_no, "duplicate key '" + key + "'");
      }
      sec[key] = Entry{value, line_no};
    }
  }

  bool has_section(const std::string& section) const { return seen_sections_.count(section) != 0; }

  const Entry* find(const std::string& section, const std::string& key) {
    auto sit = entries_.find(section);
    if (sit == entries_.end()) {
      return nullptr;
    }
    auto kit = sit->second.find(key);
    if (kit == sit->second.end()) {
      return nullptr;
    }
    kit->second.used = true;
    return &kit->second;
  }

  [[noreturn]] void fail(const std::string& section, const std::string& key, const std::string& what) {
    const Entry* e = find(section, key);
    std::string where = source_;
    if (e != nullptr) {
      where += ":" + std::to_string(e->line);
    }
    throw SchemaError(where + ": [" + section + "] " + key + ": " + what);
  }

  std::optional<std::string> text(const std::string& section, const std::string& key) {
    const Entry* e = find(section, key);
    if (e == nullptr) {
      return std::nullopt;
    }
    if (e->value.empty()) {
      fail(section, key, "empty value");
    }
    return e->value;
  }

  std::string required_text(const std::string& section, const std::string& key) {
    auto v = text(section, key);
    if (!v) {
      throw SchemaError(source_ + ": missing required key '" + key + "' in [" + section + "]");
    }
    return *v;
  }

  double parse_number(const std::string& section, const std::string& key, std::string_view s) {
    const std::string t = trim(s);
    double v = 0.0;
    const auto* first = t.data();
    const auto* last = t.data() + t.size();
    const auto res = std::from_chars(first, last, v);
    if (t.empty() || res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) {
      fail(section, key, "'" + t + "' is not a finite number");
    }
    return v;
  }

  std::optional<double> number(const std::string& section, const std::string& key) {
    auto t = text(section, key);
    if (!t) {
      return std::nullopt;
    }
    return parse_number(section, key, *t);
  }

  double required_number(const std::string& section, const std::string& key) {
    return parse_number(section, key, required_text(section, key));
  }

  std::optional<std::uint64_t> count(const std::string& section, const std::string& key) {
    auto t = text(section, key);
    if (!t) {
      return std::nullopt;
    }
    std::uint64_t v = 0;
    const auto res = std::from_chars(t->data(), t->data() + t->size(), v);
    if (res.ec != std::errc() || res.ptr != t->data() + t->size()) {
      // Accept integral values written in floating notation, e.g. 1e5.
      const double d = parse_number(section, key, *t);
      if (d < 0.0 || d != std::floor(d) || d > 1.8e19) {
        fail(section, key, "'" + *t + "' is not a non-negative integer");
      }
      return static_cast<std::uint64_t>(d);
    }
    return v;
  }

  std::vector<std::string> list(const std::string& section, const std::string& key) {
    std::vector<std::string> items;
    auto t = text(section, key);
    if (!t) {
      return items;
    }
    std::stringstream ss(*t);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) {
        fail(section, key, "empty list item");
      }
      items.push_back(item);
    }
    return items;
  }

  // Comma-separated numbers and inclusive "start:stop:step" ranges.
  std::vector<double> number_list(const std::string& section, const std::string& key) {
    std::vector<double> out;
    for (const auto& item : list(section, key)) {
      const auto c1 = item.find(':');
      if (c1 == std::string::npos) {
        out.push_back(parse_number(section, key, item));
        continue;
      }
      const auto c2 = item.find(':', c1 + 1);
      if (c2 == std::string::npos || item.find(':', c2 + 1) != std::string::npos) {
        fail(section, key, "range '" + item + "' must be start:stop:step");
      }
      const double start = parse_number(section, key, item.substr(0, c1));
      const double stop = parse_number(section, key, item.substr(c1 + 1, c2 - c1 - 1));
      const double step = parse_number(section, key, item.substr(c2 + 1));
      if (!(step > 0.0) || stop < start) {
        fail(section, key, "range '" + item + "' needs step > 0 and stop >= start");
      }
      const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
      if (n > 1000000) {
        fail(section, key, "range '" + item + "' has too many points");
      }
      for (long i = 0; i <= n; ++i) {
        out.push_back(start + static_cast<double>(i) * step);
      }
    }
    return out;
  }

  void check_all_used() {
    for (const auto& [section, keys] : entries_) {
      for (const auto& [key, entry] : keys) {
        if (!entry.used) {
          throw SchemaError(source_ + ":" + std::to_string(entry.line) + ": key '" + key + "' in [" + section +
                            "] does not apply to this configuration");
        }
      }
    }
  }

  const std::string& source() const { return source_; }

 private:
  std::string source_;
  std::map<std::string, int> seen_sections_;
  std::map<std::string, std::map<std::string, Entry>> entries_;
};

template <typename E>
E choose(Document& doc, const std::string& section, const std::string& key, const std::string& value,
         std::initializer_list<std::pair<const char*, E>> options) {
  std::string names;
  for (const auto& [name, e] : options) {
    if (value == name) {
      return e;
    }
    names += names.empty() ? name : std::string(", ") + name;
  }
  doc.fail(section, key, "'" + value + "' is not one of: " + names);
}

void read_class(Document& doc, const std::string& section, PathLossSpec& loss, FadingSpec& fading) {
  if (!doc.has_section(section)) {
    throw SchemaError(doc.source() + ": missing section [" + section + "]");
  }
  loss.norm = choose<Norm>(doc, section, "norm", doc.text(section, "norm").value_or("euclidean"),
                     {{"euclidean", Norm::Euclidean}, {"manhattan", Norm::Manhattan}});
  loss.amplitude = doc.required_number(section, "amplitude");
  loss.alpha = doc.required_number(section, "alpha");
  enum class Family { Exponential, Erlang, LogNormal };
  const auto family = choose<Family>(doc, section, "fading", doc.text(section, "fading").value_or("exponential"),
                             {{"exponential", Family::Exponential},
                              {"erlang", Family::Erlang},
                              {"lognormal", Family::LogNormal}});
  switch (family) {
    case Family::Exponential:
      fading = FadingSpec::exponential(doc.number(section, "fading_theta").value_or(1.0));
      break;
    case Family::Erlang: {
      const double k = doc.required_number(section, "fading_k");
      if (k < 1.0 || k != std::floor(k) || k > 1000.0) {
        doc.fail(section, "fading_k", "must be a positive integer");
      }
      fading = FadingSpec::erlang(static_cast<int>(k), doc.number(section, "fading_theta").value_or(1.0));
      break;
    }
    case Family::LogNormal:
      fading = FadingSpec::lognormal(doc.required_number(section, "fading_sigma_db"));
      break;
  }
}

// Exactly one of the linear and logarithmic spellings.
double read_power(Document& doc, const std::string& linear, const std::string& log,
                  double (*from_log)(double)) {
  const auto a = doc.number("link", linear);
  const auto b = doc.number("link", log);
  if (a && b) {
    doc.fail("link", log, "give either " + linear + " or " + log + ", not both");
  }
  if (!a && !b) {
    throw SchemaError(doc.source() + ": [link] needs " + linear + " or " + log);
  }
  return a ? *a : from_log(*b);
}

void require_monotone(Document& doc, const std::string& key, const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) {
      doc.fail("sweep", key, "values must be strictly increasing");
    }
  }
}

}  // namespace

Experiment parse_config(std::string_view text, std::string_view source) {
  Document doc(text, source);
  Experiment ex;

  ex.name = doc.text("experiment", "name").value_or("experiment");
  if (!std::all_of(ex.name.begin(), ex.name.end(),
                   [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-'; })) {
    doc.fail("experiment", "name", "only letters, digits, '_' and '-' are allowed");
  }
  if (doc.text("experiment", "outputs")) {
    ex.outputs.clear();
    for (const auto& o : doc.list("experiment", "outputs")) {
      const Output out = choose<Output>(doc, "experiment", "outputs", o,
                                {{"outage", Output::Outage},
                                 {"reception", Output::Reception},
                                 {"throughput", Output::Throughput}});
      if (std::find(ex.outputs.begin(), ex.outputs.end(), out) != ex.outputs.end()) {
        doc.fail("experiment", "outputs", "duplicate output '" + o + "'");
      }
      ex.outputs.push_back(out);
    }
  }
  ex.engines = choose<Engines>(doc, "experiment", "engines", doc.text("experiment", "engines").value_or("both"),
                      {{"analytic", Engines::Analytic}, {"montecarlo", Engines::MonteCarlo}, {"both", Engines::Both}});

  // Scenario
  if (!doc.has_section("scenario")) {
    throw SchemaError(doc.source() + ": missing section [scenario]");
  }
  ex.scenario.roads.lambda_h = doc.required_number("scenario", "lambda_h_per_m");
  ex.scenario.roads.lambda_v = doc.required_number("scenario", "lambda_v_per_m");
  enum class Mac { None, Aloha, Csma };
  const Mac mac = choose<Mac>(doc, "scenario", "mac", doc.required_text("scenario", "mac"),
                         {{"none", Mac::None}, {"aloha", Mac::Aloha}, {"csma", Mac::Csma}});
  read_class(doc, "useful", ex.scenario.loss_useful, ex.scenario.fading_useful);
  read_class(doc, "interferers_h", ex.scenario.loss_h, ex.scenario.fading_h);
  read_class(doc, "interferers_v", ex.scenario.loss_v, ex.scenario.fading_v);

  // Link
  if (!doc.has_section("link")) {
    throw SchemaError(doc.source() + ": missing section [link]");
  }
  ex.link.tx = {doc.number("link", "tx_x_m").value_or(0.0), doc.number("link", "tx_y_m").value_or(0.0)};
  ex.link.rx = {doc.number("link", "rx_x_m").value_or(0.0), doc.number("link", "rx_y_m").value_or(0.0)};
  ex.link.power = read_power(doc, "power_w", "power_dbm", dbm_to_watts);
  ex.link.noise = read_power(doc, "noise_w", "noise_dbm", dbm_to_watts);
  ex.link.beta = read_power(doc, "beta", "beta_db", db_to_linear);

  // Sweep
  if (!doc.has_section("sweep")) {
    throw SchemaError(doc.source() + ": missing section [sweep]");
  }
  auto& sw = ex.sweep;
  sw.axis = choose<Axis>(doc, "sweep", "axis", doc.required_text("sweep", "axis"),
                   {{"tx_rx_distance", Axis::TxRxDistance},
                    {"rx_to_intersection_d", Axis::RxToIntersectionD},
                    {"access_probability", Axis::AccessProbability},
                    {"aloha_p", Axis::AlohaP},
                    {"csma_delta", Axis::CsmaDelta}});
  if (!doc.text("sweep", "values")) {
    throw SchemaError(doc.source() + ": missing required key 'values' in [sweep]");
  }
  sw.values = doc.number_list("sweep", "values");
  if (sw.values.empty()) {
    doc.fail("sweep", "values", "sweep values must not be empty");
  }
  require_monotone(doc, "values", sw.values);
  sw.d_m = doc.number_list("sweep", "d_m");
  sw.aloha_p = doc.number_list("sweep", "aloha_p");
  sw.csma_delta_m = doc.number_list("sweep", "csma_delta_m");
  sw.r_comm_m = doc.number_list("sweep", "r_comm_m");
  for (const auto& item : doc.list("sweep", "tx_positions_m")) {
    const auto colon = item.find(':');
    if (colon == std::string::npos || item.find(':', colon + 1) != std::string::npos) {
      doc.fail("sweep", "tx_positions_m", "position '" + item + "' must be x:y");
    }
    sw.tx_positions_m.push_back({doc.parse_number("sweep", "tx_positions_m", item.substr(0, colon)),
                                 doc.parse_number("sweep", "tx_positions_m", item.substr(colon + 1))});
  }

  const auto conflict = [&](bool axis_sets, const std::vector<double>& grid, const char* key) {
    if (axis_sets && !grid.empty()) {
      doc.fail("sweep", key, std::string("the sweep axis already sets this quantity"));
    }
  };
  conflict(sw.axis == Axis::RxToIntersectionD, sw.d_m, "d_m");
  conflict(sw.axis == Axis::AlohaP || sw.axis == Axis::AccessProbability, sw.aloha_p, "aloha_p");
  conflict(sw.axis == Axis::CsmaDelta || sw.axis == Axis::AccessProbability, sw.csma_delta_m, "csma_delta_m");
  const bool tx_axis = sw.axis == Axis::TxRxDistance;
  if ((tx_axis ? 1 : 0) + (sw.tx_positions_m.empty() ? 0 : 1) + (sw.r_comm_m.empty() ? 0 : 1) > 1) {
    doc.fail("sweep", sw.r_comm_m.empty() ? "tx_positions_m" : "r_comm_m",
             "tx_rx_distance, tx_positions_m and r_comm_m each place the transmitter; use one");
  }

  // MAC parameters may come from the scenario or from the sweep.
  const auto aloha_p = doc.number("scenario", "aloha_p");
  const auto delta = doc.number("scenario", "csma_delta_m");
  const bool swept_p = sw.axis == Axis::AlohaP || sw.axis == Axis::AccessProbability || !sw.aloha_p.empty();
  const bool swept_delta =
      sw.axis == Axis::CsmaDelta || sw.axis == Axis::AccessProbability || !sw.csma_delta_m.empty();
  if (aloha_p && swept_p) {
    doc.fail("scenario", "aloha_p", "already set by the sweep");
  }
  if (delta && swept_delta) {
    doc.fail("scenario", "csma_delta_m", "already set by the sweep");
  }
  switch (mac) {
    case Mac::None:
      if (aloha_p || delta || swept_p || swept_delta) {
        throw SchemaError(doc.source() + ": mac = none takes no access parameters");
      }
      ex.scenario.mac = NoMac{};
      break;
    case Mac::Aloha:
      if (delta || sw.axis == Axis::CsmaDelta || !sw.csma_delta_m.empty()) {
        throw SchemaError(doc.source() + ": csma_delta_m does not apply to mac = aloha");
      }
      if (!aloha_p && !swept_p) {
        throw SchemaError(doc.source() + ": mac = aloha needs aloha_p in [scenario] or in [sweep]");
      }
      ex.scenario.mac = Aloha{aloha_p.value_or(sw.aloha_p.empty() ? 0.0 : sw.aloha_p.front())};
      break;
    case Mac::Csma:
      if (aloha_p || sw.axis == Axis::AlohaP || !sw.aloha_p.empty()) {
        throw SchemaError(doc.source() + ": aloha_p does not apply to mac = csma");
      }
      if (!delta && !swept_delta) {
        throw SchemaError(doc.source() + ": mac = csma needs csma_delta_m in [scenario] or in [sweep]");
      }
      ex.scenario.mac = Csma{delta.value_or(sw.csma_delta_m.empty() ? 1.0 : sw.csma_delta_m.front())};
      break;
  }
  if (sw.axis == Axis::AccessProbability && mac == Mac::None) {
    throw SchemaError(doc.source() + ": access_probability sweeps need mac = aloha or csma");
  }

  // Monte Carlo and analytic settings.
  auto& mc = ex.montecarlo;
  mc.realizations = doc.count("montecarlo", "realizations").value_or(mc.realizations);
  mc.seed = doc.count("montecarlo", "seed").value_or(mc.seed);
  mc.workers = static_cast<int>(doc.count("montecarlo", "workers").value_or(mc.workers));
  mc.window_half_length = doc.number("montecarlo", "window_half_length_m").value_or(mc.window_half_length);
  if (auto f = doc.text("montecarlo", "far_field_compensation")) {
    mc.far_field_compensation =
        choose<bool>(doc, "montecarlo", "far_field_compensation", *f, {{"true", true}, {"false", false}});
  }
  if (mc.realizations < 1) {
    doc.fail("montecarlo", "realizations", "must be >= 1");
  }
  if (mc.workers < 1) {
    doc.fail("montecarlo", "workers", "must be >= 1");
  }
  if (!(mc.window_half_length > 0.0)) {
    doc.fail("montecarlo", "window_half_length_m", "must be > 0");
  }
  auto& an = ex.analytic;
  an.lognormal_fit_samples = doc.count("analytic", "lognormal_fit_samples").value_or(an.lognormal_fit_samples);
  an.lognormal_fit_seed = doc.count("analytic", "lognormal_fit_seed").value_or(an.lognormal_fit_seed);
  an.max_outage = doc.number("analytic", "max_outage").value_or(an.max_outage);
  if (!(an.max_outage > 0.0 && an.max_outage < 1.0)) {
    doc.fail("analytic", "max_outage", "must lie in (0, 1)");
  }

  doc.check_all_used();
  return ex;
}

Experiment load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw SchemaError("cannot read configuration file " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.string());
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (double x : v) {
    out += (out.empty() ? "" : ", ") + num(x);
  }
  return out;
}

void write_class(std::ostream& out, const char* section, const PathLossSpec& loss, const FadingSpec& f) {
  out << "\n[" << section << "]\n";
  out << "norm = " << to_string(loss.norm) << "\n";
  out << "amplitude = " << num(loss.amplitude) << "\n";
  out << "alpha = " << num(loss.alpha) << "\n";
  if (f.is_lognormal()) {
    out << "fading = lognormal\nfading_sigma_db = " << num(f.sigma_db()) << "\n";
  } else if (f.is_exponential()) {
    out << "fading = exponential\nfading_theta = " << num(f.scale()) << "\n";
  } else {
    out << "fading = erlang\nfading_k = " << f.shape() << "\nfading_theta = " << num(f.scale()) << "\n";
  }
}

}  // namespace

std::string to_config(const Experiment& ex) {
  std::ostringstream out;
  out << "[experiment]\nname = " << ex.name << "\noutputs = ";
  for (std::size_t i = 0; i < ex.outputs.size(); ++i) {
    out << (i ? ", " : "") << to_string(ex.outputs[i]);
  }
  out << "\nengines = " << to_string(ex.engines) << "\n";

  const auto& s = ex.scenario;
  const auto& sw = ex.sweep;
  out << "\n[scenario]\nlambda_h_per_m = " << num(s.roads.lambda_h) << "\nlambda_v_per_m = "
      << num(s.roads.lambda_v) << "\n";
  const bool swept_p = sw.axis == Axis::AlohaP || sw.axis == Axis::AccessProbability || !sw.aloha_p.empty();
  const bool swept_delta =
      sw.axis == Axis::CsmaDelta || sw.axis == Axis::AccessProbability || !sw.csma_delta_m.empty();
  if (const auto* a = std::get_if<Aloha>(&s.mac)) {
    out << "mac = aloha\n";
    if (!swept_p) {
      out << "aloha_p = " << num(a->p) << "\n";
    }
  } else if (const auto* c = std::get_if<Csma>(&s.mac)) {
    out << "mac = csma\n";
    if (!swept_delta) {
      out << "csma_delta_m = " << num(c->delta) << "\n";
    }
  } else {
    out << "mac = none\n";
  }
  write_class(out, "useful", s.loss_useful, s.fading_useful);
  write_class(out, "interferers_h", s.loss_h, s.fading_h);
  write_class(out, "interferers_v", s.loss_v, s.fading_v);

  const auto& l = ex.link;
  out << "\n[link]\ntx_x_m = " << num(l.tx.x) << "\ntx_y_m = " << num(l.tx.y) << "\nrx_x_m = " << num(l.rx.x)
      << "\nrx_y_m = " << num(l.rx.y) << "\npower_w = " << num(l.power) << "\nnoise_w = " << num(l.noise)
      << "\nbeta = " << num(l.beta) << "\n";

  out << "\n[sweep]\naxis = " << to_string(sw.axis) << "\nvalues = " << join(sw.values) << "\n";
  if (!sw.d_m.empty()) {
    out << "d_m = " << join(sw.d_m) << "\n";
  }
  if (!sw.aloha_p.empty()) {
    out << "aloha_p = " << join(sw.aloha_p) << "\n";
  }
  if (!sw.csma_delta_m.empty()) {
    out << "csma_delta_m = " << join(sw.csma_delta_m) << "\n";
  }
  if (!sw.tx_positions_m.empty()) {
    out << "tx_positions_m = ";
    for (std::size_t i = 0; i < sw.tx_positions_m.size(); ++i) {
      out << (i ? ", " : "") << num(sw.tx_positions_m[i].x) << ":" << num(sw.tx_positions_m[i].y);
    }
    out << "\n";
  }
  if (!sw.r_comm_m.empty()) {
    out << "r_comm_m = " << join(sw.r_comm_m) << "\n";
  }

  const auto& mc = ex.montecarlo;
  out << "\n[montecarlo]\nrealizations = " << mc.realizations << "\nseed = " << mc.seed
      << "\nworkers = " << mc.workers << "\nwindow_half_length_m = " << num(mc.window_half_length)
      << "\nfar_field_compensation = " << (mc.far_field_compensation ? "true" : "false") << "\n";
  const auto& an = ex.analytic;
  out << "\n[analytic]\nlognormal_fit_samples = " << an.lognormal_fit_samples
      << "\nlognormal_fit_seed = " << an.lognormal_fit_seed << "\nmax_outage = " << num(an.max_outage) << "\n";
  return out.str();
}

}  // namespace xroads::app
