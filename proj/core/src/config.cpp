#include "cvqkd/config.hpp"

#include <fmt/format.h>

#include <charconv>
#include <set>
#include <sstream>

#include "cvqkd/errors.hpp"

namespace cvqkd {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

template <typename T>
T parse_number(const std::string& text, const char* what) {
  const std::string token = trim(text);
  T value{};
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || token.empty()) {
    throw ConfigError(fmt::format("cannot parse '{}' as {}", token, what));
  }
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string::size_type pos = 0;
  while (true) {
    const auto next = text.find(sep, pos);
    if (next == std::string::npos) {
      parts.push_back(text.substr(pos));
      return parts;
    }
    parts.push_back(text.substr(pos, next - pos));
    pos = next + 1;
  }
}

// "lo:hi:step" expands inclusively; otherwise a comma list (a scalar is a
// one-element list).
std::vector<double> parse_double_list(const std::string& value) {
  if (value.find(':') != std::string::npos) {
    const auto parts = split(value, ':');
    if (parts.size() != 3) {
      throw ConfigError(
          fmt::format("range '{}' must have the form lo:hi:step", value));
    }
    const double lo = parse_number<double>(parts[0], "number");
    const double hi = parse_number<double>(parts[1], "number");
    const double step = parse_number<double>(parts[2], "number");
    if (!(step > 0.0) || hi < lo) {
      throw ConfigError(
          fmt::format("range '{}' must satisfy lo <= hi, step > 0", value));
    }
    std::vector<double> values;
    const auto count = static_cast<std::size_t>((hi - lo) / step + 1e-9);
    for (std::size_t k = 0; k <= count; ++k) values.push_back(lo + k * step);
    return values;
  }
  std::vector<double> values;
  for (const auto& part : split(value, ',')) {
    values.push_back(parse_number<double>(part, "number"));
  }
  return values;
}

std::vector<int> parse_int_list(const std::string& value) {
  if (value.find(':') != std::string::npos) {
    const auto parts = split(value, ':');
    if (parts.size() != 3) {
      throw ConfigError(
          fmt::format("range '{}' must have the form lo:hi:step", value));
    }
    const int lo = parse_number<int>(parts[0], "integer");
    const int hi = parse_number<int>(parts[1], "integer");
    const int step = parse_number<int>(parts[2], "integer");
    if (step <= 0 || hi < lo) {
      throw ConfigError(
          fmt::format("range '{}' must satisfy lo <= hi, step > 0", value));
    }
    std::vector<int> values;
    for (int x = lo; x <= hi; x += step) values.push_back(x);
    return values;
  }
  std::vector<int> values;
  for (const auto& part : split(value, ',')) {
    values.push_back(parse_number<int>(part, "integer"));
  }
  return values;
}

template <typename T>
std::string join_numbers(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += fmt::format("{}", values[i]);
  }
  return out;
}

}  // namespace

std::string subcommand_name(Subcommand cmd) {
  switch (cmd) {
    case Subcommand::keyrate: return "keyrate";
    case Subcommand::sweep: return "sweep";
    case Subcommand::tolerance: return "tolerance";
    case Subcommand::compare: return "compare";
    case Subcommand::optimize: return "optimize";
    case Subcommand::mc: return "mc";
  }
  throw ConfigError("unknown subcommand");
}

SweepGrid RunConfig::grid_for(const AxesBlock& axes) const {
  SweepGrid grid = SweepGrid::defaults();
  grid.base_params = params;
  if (!axes.distances_km.empty()) grid.distances_km = axes.distances_km;
  if (!axes.onu_counts.empty()) grid.onu_counts = axes.onu_counts;
  return grid;
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  bool saw_v = false, saw_v_mod = false;
  bool saw_eps_tot = false, saw_eps_segments = false;
  std::string section;
  std::set<std::string> seen_keys;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#' || line[0] == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(
            fmt::format("line {}: malformed section header '{}'", line_no,
                        line));
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section == "params" || section == "output") {
        // always-present targets
      } else if (section == "sweep") {
        if (!cfg.sweep) cfg.sweep.emplace();
      } else if (section == "tolerance") {
        if (!cfg.tolerance) cfg.tolerance.emplace();
      } else if (section == "compare") {
        if (!cfg.compare) cfg.compare.emplace();
      } else if (section == "optimize") {
        if (!cfg.optimize) cfg.optimize.emplace();
      } else if (section == "mc") {
        if (!cfg.mc) cfg.mc.emplace();
      } else {
        throw ConfigError(
            fmt::format("line {}: unknown section '{}'", line_no, section));
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(
          fmt::format("line {}: expected key = value, got '{}'", line_no,
                      line));
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (section.empty()) {
      throw ConfigError(
          fmt::format("line {}: key '{}' appears before any section", line_no,
                      key));
    }
    if (key.empty()) {
      throw ConfigError(fmt::format("line {}: empty key", line_no));
    }
    if (!seen_keys.insert(section + "." + key).second) {
      throw ConfigError(
          fmt::format("line {}: duplicate key '{}' in [{}]", line_no, key,
                      section));
    }

    const auto unknown = [&]() -> ConfigError {
      return ConfigError(fmt::format("line {}: unknown key '{}' in [{}]",
                                     line_no, key, section));
    };
    if (section == "params") {
      ProtocolParams& p = cfg.params;
      if (key == "v") {
        if (saw_v_mod) {
          throw ConfigError("v and v_mod are mutually exclusive");
        }
        saw_v = true;
        p.v = parse_number<double>(value, "number");
      } else if (key == "v_mod") {
        if (saw_v) {
          throw ConfigError("v and v_mod are mutually exclusive");
        }
        saw_v_mod = true;
        p.set_v_mod(parse_number<double>(value, "number"));
      } else if (key == "beta") {
        p.beta = parse_number<double>(value, "number");
      } else if (key == "eta_d") {
        p.eta_d = parse_number<double>(value, "number");
      } else if (key == "eta_e") {
        p.eta_e = parse_number<double>(value, "number");
      } else if (key == "alpha_db_per_km") {
        p.alpha_db_per_km = parse_number<double>(value, "number");
      } else if (key == "distance_km") {
        p.distance_km = parse_number<double>(value, "number");
      } else if (key == "n_onus") {
        p.n_onus = parse_number<int>(value, "integer");
      } else if (key == "epsilon_tot") {
        if (saw_eps_segments) {
          throw ConfigError(
              "epsilon_tot and epsilon_segments are mutually exclusive");
        }
        saw_eps_tot = true;
        p.epsilon_segments = {parse_number<double>(value, "number")};
      } else if (key == "epsilon_segments") {
        if (saw_eps_tot) {
          throw ConfigError(
              "epsilon_tot and epsilon_segments are mutually exclusive");
        }
        saw_eps_segments = true;
        p.epsilon_segments = parse_double_list(value);
      } else if (key == "splitter") {
        if (value == "ideal") {
          p.splitter_model = SplitterModel::ideal_1_over_n;
        } else if (value == "explicit") {
          p.splitter_model = SplitterModel::explicit_eta;
        } else {
          throw ConfigError(fmt::format(
              "splitter must be 'ideal' or 'explicit', got '{}'", value));
        }
      } else if (key == "eta_odn") {
        p.eta_odn = parse_number<double>(value, "number");
      } else {
        throw unknown();
      }
    } else if (section == "output") {
      if (key == "csv") {
        cfg.output.csv = value;
      } else if (key == "json") {
        cfg.output.json = value;
      } else if (key == "plot") {
        cfg.output.plot = value;
      } else {
        throw unknown();
      }
    } else if (section == "sweep") {
      if (key == "distances_km") {
        cfg.sweep->distances_km = parse_double_list(value);
      } else if (key == "onu_counts") {
        cfg.sweep->onu_counts = parse_int_list(value);
      } else {
        throw unknown();
      }
    } else if (section == "tolerance") {
      if (key == "distances_km") {
        cfg.tolerance->axes.distances_km = parse_double_list(value);
      } else if (key == "onu_counts") {
        cfg.tolerance->axes.onu_counts = parse_int_list(value);
      } else if (key == "eps_max") {
        cfg.tolerance->eps_max = parse_number<double>(value, "number");
      } else {
        throw unknown();
      }
    } else if (section == "compare") {
      if (key == "fiber_loss_db") {
        cfg.compare->fiber_losses_db = parse_double_list(value);
      } else if (key == "onu_counts") {
        cfg.compare->onu_counts = parse_int_list(value);
      } else {
        throw unknown();
      }
    } else if (section == "optimize") {
      if (key == "distances_km") {
        cfg.optimize->axes.distances_km = parse_double_list(value);
      } else if (key == "onu_counts") {
        cfg.optimize->axes.onu_counts = parse_int_list(value);
      } else if (key == "bracket_lo") {
        cfg.optimize->bracket.lo = parse_number<double>(value, "number");
      } else if (key == "bracket_hi") {
        cfg.optimize->bracket.hi = parse_number<double>(value, "number");
      } else {
        throw unknown();
      }
    } else if (section == "mc") {
      if (key == "n_samples") {
        cfg.mc->n_samples = parse_number<std::size_t>(value, "integer");
      } else if (key == "seed") {
        cfg.mc->seed = parse_number<std::uint64_t>(value, "integer");
      } else {
        throw unknown();
      }
    }
  }

  const int blocks = int(cfg.sweep.has_value()) + int(cfg.tolerance.has_value()) +
                     int(cfg.compare.has_value()) +
                     int(cfg.optimize.has_value()) + int(cfg.mc.has_value());
  if (blocks > 1) {
    throw ConfigError("at most one subcommand block may be present");
  }
  return cfg;
}

std::string serialize_config(const RunConfig& config, Subcommand cmd) {
  const ProtocolParams& p = config.params;
  std::string out = "[params]\n";
  out += fmt::format("v = {}\n", p.v);
  out += fmt::format("beta = {}\n", p.beta);
  out += fmt::format("eta_d = {}\n", p.eta_d);
  out += fmt::format("eta_e = {}\n", p.eta_e);
  out += fmt::format("alpha_db_per_km = {}\n", p.alpha_db_per_km);
  out += fmt::format("distance_km = {}\n", p.distance_km);
  out += fmt::format("n_onus = {}\n", p.n_onus);
  out += fmt::format("epsilon_segments = {}\n",
                     join_numbers(p.epsilon_segments));
  out += fmt::format(
      "splitter = {}\n",
      p.splitter_model == SplitterModel::ideal_1_over_n ? "ideal"
                                                        : "explicit");
  if (p.splitter_model == SplitterModel::explicit_eta) {
    out += fmt::format("eta_odn = {}\n", p.eta_odn);
  }

  const auto axes_lines = [&](const AxesBlock& axes) {
    const SweepGrid grid = config.grid_for(axes);
    return fmt::format("distances_km = {}\nonu_counts = {}\n",
                       join_numbers(grid.distances_km),
                       join_numbers(grid.onu_counts));
  };
  switch (cmd) {
    case Subcommand::keyrate:
      break;
    case Subcommand::sweep:
      out += "\n[sweep]\n";
      out += axes_lines(config.sweep.value_or(AxesBlock{}));
      break;
    case Subcommand::tolerance: {
      const ToleranceBlock block = config.tolerance.value_or(ToleranceBlock{});
      out += "\n[tolerance]\n";
      out += axes_lines(block.axes);
      out += fmt::format("eps_max = {}\n", block.eps_max);
      break;
    }
    case Subcommand::compare: {
      const CompareBlock block = config.compare.value_or(CompareBlock{});
      out += "\n[compare]\n";
      out += fmt::format("fiber_loss_db = {}\n",
                         join_numbers(block.fiber_losses_db));
      out += fmt::format("onu_counts = {}\n", join_numbers(block.onu_counts));
      break;
    }
    case Subcommand::optimize: {
      const OptimizeBlock block = config.optimize.value_or(OptimizeBlock{});
      out += "\n[optimize]\n";
      out += axes_lines(block.axes);
      out += fmt::format("bracket_lo = {}\n", block.bracket.lo);
      out += fmt::format("bracket_hi = {}\n", block.bracket.hi);
      break;
    }
    case Subcommand::mc: {
      const McBlock block = config.mc.value_or(McBlock{});
      out += "\n[mc]\n";
      out += fmt::format("n_samples = {}\n", block.n_samples);
      out += fmt::format("seed = {}\n", block.seed);
      break;
    }
  }
  return out;
}

std::string params_hash(const RunConfig& config, Subcommand cmd) {
  const std::string canonical = serialize_config(config, cmd);
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : canonical) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return fmt::format("{:016x}", hash);
}

}  // namespace cvqkd
