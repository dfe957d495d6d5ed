#include "cli/run.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "coprime/coprime.hpp"

namespace coprime::cli {

namespace {

constexpr std::int64_t kDefaultGrid = 4096;
constexpr std::int64_t kTablesGrid = 16384;

struct CommandName {
  Command command;
  const char* name;
};

constexpr CommandName kCommands[] = {
    {Command::Diffset, "diffset"},   {Command::Weights, "weights"},
    {Command::Bias, "bias"},         {Command::Variance, "variance"},
    {Command::Complexity, "complexity"}, {Command::Estimate, "estimate"},
    {Command::Tables, "tables"},
};

std::string command_name(Command c) {
  for (const auto& entry : kCommands) {
    if (entry.command == c) return entry.name;
  }
  return "?";
}

std::string format_double(double v) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, result.ptr);
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

// Flat `key = value` file to flag tokens. A `command` key names the
// subcommand.
std::vector<std::string> read_config_file(const std::string& path, std::string& command) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::vector<std::string> tokens;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#' || text[0] == ';') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(std::string_view(text).substr(0, eq));
    const std::string value = trim(std::string_view(text).substr(eq + 1));
    if (key.empty()) throw ConfigError(path + ":" + std::to_string(line_no) + ": empty key");
    if (key == "command") {
      command = value;
      continue;
    }
    tokens.push_back(key.size() == 1 ? "-" + key : "--" + key);
    tokens.push_back(value);
  }
  return tokens;
}

void add_options(CLI::App& sub, RunConfig& c, std::string& range, std::string& sb,
                 std::string& format) {
  sub.add_option("-M", c.M, "undersampling factor of sub-array 1");
  sub.add_option("-N", c.N, "undersampling factor of sub-array 2");
  sub.add_option("--range", range, "lag range: full | continuous | prototype");
  sub.add_option("--grid", c.grid_size, "frequency grid size (even, >= 1024)");
  sub.add_option("--sb", sb, "biased normalization: unit (s_b = 1) | default (s_b = 2M+N-1)");
  sub.add_option("--snapshots", c.snapshots, "snapshots to average");
  sub.add_option("--seed", c.seed, "random seed");
  sub.add_option("--realization", c.realization, "realization index");
  sub.add_option("-o,--output", c.output, "output file");
  sub.add_option("--format", format, "csv | json");
  sub.add_option("--max", c.max, "sweep bound (tables, variance)");
  sub.add_option("--window", c.window, "bias window: biased | unbiased");
  sub.add_option("--kind", c.kind, "difference set kind, e.g. C+ or B-");
  sub.add_option("--preset", c.preset, "signal preset: one | three | spread");
  sub.add_option("--freq", c.frequencies, "tone frequencies as multiples of pi")->delimiter(',');
  sub.add_option("--noise", c.noise, "noise power");
  sub.add_option("--norm", c.norm, "autocorrelation normalization: biased | unbiased");
  sub.add_option("--peaks", c.peaks, "report the k largest spectral peaks");
  for (CLI::Option* opt : sub.get_options()) {
    if (opt->get_name() != "--help") opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  }
  sub.get_option("--freq")->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
}

}  // namespace

std::int64_t RunConfig::resolved_grid_size() const {
  if (grid_size) return *grid_size;
  return command == Command::Tables ? kTablesGrid : kDefaultGrid;
}

SbMode RunConfig::resolved_sb_mode() const {
  if (sb_mode) return *sb_mode;
  return command == Command::Estimate || command == Command::Variance ? SbMode::Default
                                                                      : SbMode::Unit;
}

std::string RunConfig::describe() const {
  std::ostringstream s;
  s << "command=" << command_name(command) << " M=" << M << " N=" << N
    << " range=" << to_string(range) << " grid=" << resolved_grid_size()
    << " sb=" << (resolved_sb_mode() == SbMode::Unit ? "unit" : "default")
    << " snapshots=" << snapshots << " seed=" << seed << " realization=" << realization
    << " format=" << (format == OutputFormat::Csv ? "csv" : "json") << " max=" << max
    << " window=" << window << " kind=" << (kind.empty() ? "all" : kind) << " preset=" << preset
    << " freq=";
  for (std::size_t i = 0; i < frequencies.size(); ++i) {
    s << (i ? "," : "") << format_double(frequencies[i]);
  }
  s << " noise=" << format_double(noise) << " norm=" << norm << " peaks=" << peaks;
  return s.str();
}

RunConfig parse_command_line(const std::vector<std::string>& args) {
  std::vector<std::string> cli_tokens;
  std::vector<std::string> file_tokens;
  std::string file_command;
  for (std::size_t i = 1; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--config") {
      if (i + 1 >= args.size()) throw ConfigError("--config needs a file path");
      file_tokens = read_config_file(args[++i], file_command);
    } else if (a.rfind("--config=", 0) == 0) {
      file_tokens = read_config_file(a.substr(9), file_command);
    } else {
      cli_tokens.push_back(a);
    }
  }

  std::string command;
  if (!cli_tokens.empty() && !cli_tokens.front().empty() && cli_tokens.front()[0] != '-') {
    command = cli_tokens.front();
    cli_tokens.erase(cli_tokens.begin());
  } else {
    command = file_command;
  }
  if (command.empty()) throw ConfigError("missing command");

  RunConfig config;
  bool known = false;
  for (const auto& entry : kCommands) {
    if (command == entry.name) {
      config.command = entry.command;
      known = true;
    }
  }
  if (!known) throw ConfigError("unknown command '" + command + "'");

  std::string range = "full";
  std::string sb;
  std::string format = "csv";
  CLI::App app{"co-prime analysis", command};
  add_options(app, config, range, sb, format);

  std::vector<std::string> tokens = file_tokens;
  tokens.insert(tokens.end(), cli_tokens.begin(), cli_tokens.end());
  std::reverse(tokens.begin(), tokens.end());  // CLI11 consumes from the back
  try {
    app.parse(tokens);
  } catch (const CLI::ParseError& e) {
    throw ConfigError(e.what());
  }

  const auto parsed_range = parse_range_kind(range);
  if (!parsed_range) throw ConfigError("unknown range '" + range + "'");
  config.range = *parsed_range;
  if (sb == "unit") {
    config.sb_mode = SbMode::Unit;
  } else if (sb == "default") {
    config.sb_mode = SbMode::Default;
  } else if (!sb.empty()) {
    throw ConfigError("unknown s_b mode '" + sb + "'");
  }
  if (format == "csv") {
    config.format = OutputFormat::Csv;
  } else if (format == "json") {
    config.format = OutputFormat::Json;
  } else {
    throw ConfigError("unknown format '" + format + "'");
  }
  validate(config);
  return config;
}

void validate(const RunConfig& c) {
  const bool needs_pair = c.command != Command::Variance && c.command != Command::Tables;
  if (needs_pair) {
    try {
      (void)make_pair(c.M, c.N);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }
  const std::int64_t grid = c.resolved_grid_size();
  if (grid < FrequencyGrid::kMinSize || grid % 2 != 0) {
    throw ConfigError("--grid must be even and >= " + std::to_string(FrequencyGrid::kMinSize));
  }
  if (c.snapshots < 1) throw ConfigError("--snapshots must be >= 1");
  if (c.command == Command::Tables && c.max < 2) throw ConfigError("--max must be >= 2");
  if (c.command == Command::Variance && c.max < 1) throw ConfigError("--max must be >= 1");
  if (c.max > kMaxFactor) throw ConfigError("--max is limited to " + std::to_string(kMaxFactor));
  if (c.window != "biased" && c.window != "unbiased") throw ConfigError("--window must be biased or unbiased");
  if (c.norm != "biased" && c.norm != "unbiased") throw ConfigError("--norm must be biased or unbiased");
  if (c.preset != "one" && c.preset != "three" && c.preset != "spread") {
    throw ConfigError("--preset must be one, three or spread");
  }
  if (!c.kind.empty() && !parse_set_kind(c.kind)) throw ConfigError("unknown set kind '" + c.kind + "'");
  if (!(c.noise >= 0.0)) throw ConfigError("--noise must be >= 0");
  if (c.peaks < 0) throw ConfigError("--peaks must be >= 0");
  for (double f : c.frequencies) {
    if (!(f > -1.0 && f <= 1.0)) throw ConfigError("--freq values must lie in (-1, 1] (units of pi)");
  }
}

namespace {

double sb_value(const RunConfig& c, const CoprimePair& pair) {
  return c.resolved_sb_mode() == SbMode::Unit ? 1.0 : static_cast<double>(pair.sb());
}

std::vector<Table> run_diffset(const RunConfig& c) {
  const CoprimePair pair = make_pair(c.M, c.N);
  Table lags{"lags", {"set", "lag", "multiplicity"}, {}};
  Table dofs{"dof", {"set", "closed_form", "enumerated"}, {}};
  for (SetKind kind : kAllSetKinds) {
    if (!c.kind.empty() && *parse_set_kind(c.kind) != kind) continue;
    const DifferenceSet set = difference_set(pair, kind);
    const std::string name(to_string(kind));
    for (std::size_t i = 0; i < set.size(); ++i) {
      lags.rows.push_back({name, set.lags[i], set.multiplicity[i]});
    }
    const Count closed = dof(pair, kind);
    const auto enumerated = static_cast<Count>(set.size());
    if (closed != enumerated) {
      throw Error(ErrorCode::NumericMismatch, "dof of " + name + " disagrees with enumeration");
    }
    dofs.rows.push_back({name, closed, enumerated});
  }
  return {std::move(lags), std::move(dofs)};
}

std::vector<Table> run_weights(const RunConfig& c) {
  const CoprimePair pair = make_pair(c.M, c.N);
  const WeightFunction oracle = weight_oracle(pair, c.range);
  if (!(weight_closed_form(pair, c.range) == oracle)) {
    throw Error(ErrorCode::NumericMismatch, "closed-form weights disagree with enumeration");
  }
  Table t{"weights", {"lag", "count"}, {}};
  for (Lag lag = -oracle.max_lag; lag <= oracle.max_lag; ++lag) t.rows.push_back({lag, oracle.at(lag)});
  return {std::move(t)};
}

void check_against_dtft(const Eigen::VectorXd& closed, const SpectrumCurve& dtft, double scale) {
  const double err = (closed - dtft.values).cwiseAbs().maxCoeff();
  if (err > 1e-9 * scale) {
    throw Error(ErrorCode::NumericMismatch,
                "closed-form bias differs from the transform by " + format_double(err));
  }
}

std::vector<Table> run_bias(const RunConfig& c) {
  const CoprimePair pair = make_pair(c.M, c.N);
  const FrequencyGrid grid(c.resolved_grid_size());
  if (c.window == "unbiased") {
    const SpectrumCurve curve = bias_unbiased(pair, c.range, grid);
    const SpectrumCurve oracle = dtft_of_window(unbiased_window(pair, c.range), grid);
    check_against_dtft(curve.values, oracle, 1.0 + oracle.values.cwiseAbs().maxCoeff());
    Table t{"bias", {"omega", "value"}, {}};
    for (Eigen::Index i = 0; i < grid.size(); ++i) t.rows.push_back({grid.omega(i), curve.values(i)});
    return {std::move(t)};
  }
  const double s_b = sb_value(c, pair);
  const BiasTermCurves terms = biased_term_curves(pair, c.range, grid);
  const SpectrumCurve oracle = dtft_of_window(weight_oracle(pair, c.range), grid);
  check_against_dtft(terms.total.values, oracle, 1.0 + oracle.values.cwiseAbs().maxCoeff());
  Table t{"bias", {"omega", "a", "b", "c", "d", "total"}, {}};
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    t.rows.push_back({grid.omega(i), terms.a.values(i) / s_b, terms.b.values(i) / s_b,
                      terms.c.values(i) / s_b, terms.d.values(i) / s_b, terms.total.values(i) / s_b});
  }
  return {std::move(t)};
}

std::vector<Table> run_variance(const RunConfig& c) {
  Table t{"variance", {"M", "N", "coprime", "f_c", "f_p"}, {}};
  const bool unit = c.resolved_sb_mode() == SbMode::Unit;
  for (Lag M = 1; M <= c.max; ++M) {
    for (Lag N = 1; N <= c.max; ++N) {
      const double s_b = unit ? 1.0 : static_cast<double>(2 * M + N - 1);
      const std::int64_t coprime = std::gcd(M, N) == 1 ? 1 : 0;
      t.rows.push_back({M, N, coprime,
                        static_cast<double>(continuous_peak_formula(M, N)) / (s_b * s_b),
                        static_cast<double>(prototype_peak_formula(M, N)) / (s_b * s_b)});
    }
  }
  return {std::move(t)};
}

std::vector<Table> run_complexity(const RunConfig& c) {
  const CoprimePair pair = make_pair(c.M, c.N);
  Table t{"complexity", {"scheme", "multiplications", "additions"}, {}};
  for (ComplexityScheme scheme : kAllComplexitySchemes) {
    if (scheme == ComplexityScheme::PrototypeContinuous && pair.M() < pair.N()) continue;
    const ComplexityReport closed = complexity(pair, scheme);
    if (!(closed == complexity_oracle(pair, scheme))) {
      throw Error(ErrorCode::NumericMismatch,
                  "closed-form counts for " + std::string(to_string(scheme)) + " disagree with weights");
    }
    t.rows.push_back({std::string(to_string(scheme)), closed.multiplications, closed.additions});
  }
  return {std::move(t)};
}

std::vector<Table> run_estimate(const RunConfig& c) {
  const CoprimePair pair = make_pair(c.M, c.N);
  const FrequencyGrid grid(c.resolved_grid_size());
  SignalModel model = SignalModel::single_tone(c.seed);
  if (c.preset == "three") model = SignalModel::three_tones(c.seed);
  if (c.preset == "spread") model = SignalModel::spread_tones(c.seed);
  if (!c.frequencies.empty()) {
    model.components.clear();
    for (double f : c.frequencies) model.components.push_back({f * std::numbers::pi, 1.0, std::nullopt});
  }
  model.noise_power = c.noise;
  try {
    model.validate();
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  const Normalization norm =
      c.norm == "unbiased" ? Normalization{Unbiased{}} : Normalization{Biased{sb_value(c, pair)}};
  const SpectrumCurve curve =
      average_correlogram(model, pair, c.snapshots, c.range, grid, norm, c.realization);
  std::vector<Table> out;
  Table t{"correlogram", {"omega", "value"}, {}};
  for (Eigen::Index i = 0; i < grid.size(); ++i) t.rows.push_back({grid.omega(i), curve.values(i)});
  out.push_back(std::move(t));
  if (c.peaks > 0) {
    Table p{"peaks", {"rank", "omega", "value"}, {}};
    std::int64_t rank = 1;
    for (const Peak& peak : detect_peaks(curve, static_cast<std::size_t>(c.peaks))) {
      p.rows.push_back({rank++, peak.omega, peak.value});
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Table> run_tables(const RunConfig& c) {
  Table dof_table{"table1", {"M", "N", "set", "extended_closed_form", "extended_enumerated",
                             "prototype_closed_form", "prototype_enumerated"}, {}};
  constexpr SetKind kTableKinds[] = {SetKind::SMPlus, SetKind::SMMinus, SetKind::SNPlus,
                                     SetKind::SNMinus, SetKind::SPlus, SetKind::SMinus,
                                     SetKind::S, SetKind::CPlus, SetKind::CMinus, SetKind::C};
  for (Lag M = 2; M <= c.max; ++M) {
    for (Lag N = 2; N <= c.max; ++N) {
      if (std::gcd(M, N) != 1) continue;
      const CoprimePair pair = make_pair(M, N);
      for (SetKind kind : kTableKinds) {
        const Count ext = dof(pair, kind);
        const auto ext_enum = static_cast<Count>(difference_set(pair, kind).size());
        const Count proto = *prototype_dof(pair, kind);
        const auto proto_enum = static_cast<Count>(prototype_difference_set(pair, kind).size());
        if (ext != ext_enum || proto != proto_enum) {
          throw Error(ErrorCode::NumericMismatch, "dof closed form disagrees with enumeration");
        }
        dof_table.rows.push_back({M, N, std::string(to_string(kind)), ext, ext_enum, proto, proto_enum});
      }
    }
  }

  const FrequencyGrid grid(c.resolved_grid_size());
  const auto r = [&](Lag M, Lag N, RangeKind range) {
    return relative_amplitude(make_pair(M, N), range, grid).relative_amplitude;
  };
  Table orientation{"table2", {"M", "N", "f", "c", "p", "swapped_f", "swapped_c", "swapped_p"}, {}};
  constexpr std::pair<Lag, Lag> kOrientationRows[] = {{4, 3}, {5, 3}, {7, 3}, {8, 3}, {5, 4}, {7, 4}};
  for (const auto& [M, N] : kOrientationRows) {
    orientation.rows.push_back({M, N, r(M, N, RangeKind::Full), r(M, N, RangeKind::Continuous),
                                r(M, N, RangeKind::Prototype), r(N, M, RangeKind::Full),
                                r(N, M, RangeKind::Continuous), r(N, M, RangeKind::Prototype)});
  }
  Table choice{"table3", {"M", "N", "f", "c", "p"}, {}};
  constexpr std::pair<Lag, Lag> kChoiceRows[] = {{14, 13}, {14, 5}, {7, 13}, {13, 14}, {5, 14}, {13, 7}};
  for (const auto& [M, N] : kChoiceRows) {
    choice.rows.push_back({M, N, r(M, N, RangeKind::Full), r(M, N, RangeKind::Continuous),
                           r(M, N, RangeKind::Prototype)});
  }
  return {std::move(dof_table), std::move(orientation), std::move(choice)};
}

std::string cell_text(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else {
          return std::to_string(v);
        }
      },
      cell);
}

nlohmann::ordered_json cell_json(const Cell& cell) {
  return std::visit([](const auto& v) { return nlohmann::ordered_json(v); }, cell);
}

void emit_error(std::ostream& err, const char* kind, int code, const std::string& message) {
  nlohmann::ordered_json record;
  record["error"] = kind;
  record["exit_code"] = code;
  record["message"] = message;
  err << record.dump() << '\n';
}

}  // namespace

std::vector<Table> execute(const RunConfig& c) {
  switch (c.command) {
    case Command::Diffset: return run_diffset(c);
    case Command::Weights: return run_weights(c);
    case Command::Bias: return run_bias(c);
    case Command::Variance: return run_variance(c);
    case Command::Complexity: return run_complexity(c);
    case Command::Estimate: return run_estimate(c);
    case Command::Tables: return run_tables(c);
  }
  return {};
}

void write_csv(std::ostream& out, const RunConfig& config, const std::vector<Table>& tables) {
  for (std::size_t t = 0; t < tables.size(); ++t) {
    const Table& table = tables[t];
    if (t > 0) out << '\n';
    out << "# " << config.describe() << " table=" << table.name << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
    out << '\n';
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
      out << '\n';
    }
  }
}

void write_json(std::ostream& out, const RunConfig& config, const std::vector<Table>& tables) {
  nlohmann::ordered_json doc;
  doc["config"] = config.describe();
  doc["tables"] = nlohmann::ordered_json::object();
  for (const Table& table : tables) {
    nlohmann::ordered_json records = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      nlohmann::ordered_json record;
      for (std::size_t i = 0; i < row.size(); ++i) record[table.columns[i]] = cell_json(row[i]);
      records.push_back(std::move(record));
    }
    doc["tables"][table.name] = std::move(records);
  }
  out << doc.dump(1) << '\n';
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  try {
    config = parse_command_line(args);
  } catch (const ConfigError& e) {
    emit_error(err, "config", kExitConfig, e.what());
    return kExitConfig;
  }

  std::vector<Table> tables;
  try {
    tables = execute(config);
  } catch (const ConfigError& e) {
    emit_error(err, "config", kExitConfig, e.what());
    return kExitConfig;
  } catch (const Error& e) {
    emit_error(err, "internal", kExitInternal, e.what());
    return kExitInternal;
  }

  std::string path = config.output;
  const std::string ext = config.format == OutputFormat::Csv ? ".csv" : ".json";
  if (path.empty()) {
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) {
      path = (std::filesystem::path(dir) / (command_name(config.command) + ext)).string();
    }
  }

  const auto write = [&](std::ostream& sink) {
    if (config.format == OutputFormat::Csv) {
      write_csv(sink, config, tables);
    } else {
      write_json(sink, config, tables);
    }
  };
  if (path.empty()) {
    write(out);
    return out ? kExitOk : kExitIo;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    emit_error(err, "io", kExitIo, "cannot open '" + path + "' for writing");
    return kExitIo;
  }
  write(file);
  file.close();
  if (!file) {
    emit_error(err, "io", kExitIo, "failed writing '" + path + "'");
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace coprime::cli
