#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "entnorm/entnorm.h"
#include "json.hpp"

namespace entnorm::cli {

namespace {

using nlohmann::json;

// Carries an exit code up to run().
struct Failure {
  int code;
  std::string message;
};

struct Options {
  int n = 0;
  double alpha = 0.0;
  std::optional<double> rho;
  std::optional<double> h;
  std::optional<double> norm;
  long long samples = 10000;
  int grid = 512;
  std::uint64_t seed = 0;
  int y_size = 4;
  unsigned workers = 0;
  std::string input;
  std::string output;
  std::string format = "csv";
  bool bits = false;
  bool alpha_given = false;

  // Entropic quantities are divided by this at output time.
  double unit() const { return bits ? std::log(2.0) : 1.0; }
};

// Parameter errors are usage errors; errors about file contents are I/O errors.
void check(entnorm_status status, int code = kExitUsage) {
  if (status != ENTNORM_OK) throw Failure{code, entnorm_last_error()};
}

struct JointDeleter {
  void operator()(entnorm_joint* j) const { entnorm_joint_destroy(j); }
};
struct ChannelDeleter {
  void operator()(entnorm_channel* c) const { entnorm_channel_destroy(c); }
};
using JointPtr = std::unique_ptr<entnorm_joint, JointDeleter>;
using ChannelPtr = std::unique_ptr<entnorm_channel, ChannelDeleter>;

json opt_json(int has, double value, double scale = 1.0) {
  return has ? json(value / scale) : json(nullptr);
}

json interval_json(const entnorm_interval& iv, double scale = 1.0) {
  return {{"lower", opt_json(iv.has_lo, iv.lo, scale)},
          {"upper", opt_json(iv.has_hi, iv.hi, scale)}};
}

std::string csv_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

// Sends `text` to --output or to `out`.
void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.output, std::ios::binary);
  if (!file) throw Failure{kExitIo, "cannot open output file '" + o.output + "'"};
  file << text;
  file.flush();
  if (!file) throw Failure{kExitIo, "failed writing output file '" + o.output + "'"};
}

// ---- input files

json load_json(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Failure{kExitIo, "cannot read input file '" + path + "'"};
  std::ostringstream buffer;
  buffer << file.rdbuf();
  const std::string text = buffer.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Translate the byte offset into a line and column.
    const std::size_t at = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < at; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Failure{kExitIo, path + ":" + std::to_string(line) + ":" + std::to_string(column) +
                               ": malformed JSON: " + e.what()};
  }
}

void require_fields(const json& doc, const std::set<std::string>& fields, const std::string& path) {
  if (!doc.is_object()) throw Failure{kExitIo, path + ": top level must be a JSON object"};
  for (const auto& [key, value] : doc.items()) {
    if (!fields.count(key)) throw Failure{kExitIo, path + ": unknown field '" + key + "'"};
  }
  for (const auto& field : fields) {
    if (!doc.contains(field)) throw Failure{kExitIo, path + ": missing field '" + field + "'"};
  }
}

std::vector<double> number_array(const json& node, const std::string& where) {
  if (!node.is_array()) throw Failure{kExitIo, where + ": expected an array of numbers"};
  if (node.empty()) throw Failure{kExitIo, where + ": array is empty"};
  std::vector<double> values;
  values.reserve(node.size());
  for (std::size_t i = 0; i < node.size(); ++i) {
    if (!node[i].is_number()) {
      throw Failure{kExitIo, where + "[" + std::to_string(i) + "]: expected a number"};
    }
    values.push_back(node[i].get<double>());
  }
  return values;
}

// Row-major matrix; all rows must have the same length.
std::vector<double> number_matrix(const json& node, const std::string& where, std::size_t& rows,
                                  std::size_t& cols) {
  if (!node.is_array() || node.empty()) {
    throw Failure{kExitIo, where + ": expected a non-empty array of rows"};
  }
  std::vector<double> flat;
  rows = node.size();
  cols = 0;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string name = where + "[" + std::to_string(r) + "]";
    const std::vector<double> row = number_array(node[r], name);
    if (r == 0) cols = row.size();
    if (row.size() != cols) {
      throw Failure{kExitIo, name + ": has " + std::to_string(row.size()) + " entries, expected " +
                                 std::to_string(cols)};
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return flat;
}

JointPtr load_joint(const std::string& path) {
  const json doc = load_json(path);
  require_fields(doc, {"py", "rows"}, path);
  const std::vector<double> py = number_array(doc["py"], path + ": py");
  std::size_t rows = 0, cols = 0;
  const std::vector<double> flat = number_matrix(doc["rows"], path + ": rows", rows, cols);
  if (rows != py.size()) {
    throw Failure{kExitIo, path + ": py has " + std::to_string(py.size()) + " entries but rows has " +
                               std::to_string(rows)};
  }
  entnorm_joint* joint = nullptr;
  if (entnorm_joint_create(py.data(), py.size(), flat.data(), cols, &joint) != ENTNORM_OK) {
    throw Failure{kExitIo, path + ": " + entnorm_last_error()};
  }
  return JointPtr(joint);
}

ChannelPtr load_channel(const std::string& path) {
  const json doc = load_json(path);
  require_fields(doc, {"transitions"}, path);
  std::size_t rows = 0, cols = 0;
  const std::vector<double> flat =
      number_matrix(doc["transitions"], path + ": transitions", rows, cols);
  entnorm_channel* channel = nullptr;
  if (entnorm_channel_create(flat.data(), rows, cols, &channel) != ENTNORM_OK) {
    throw Failure{kExitIo, path + ": " + entnorm_last_error()};
  }
  return ChannelPtr(channel);
}

// ---- commands

std::string cmd_curve(const Options& o) {
  if (o.grid < 2) throw Failure{kExitUsage, "--grid must be at least 2"};
  int has_upper = 0;
  check(entnorm_upper_available(o.n, o.alpha, &has_upper));
  const double top = std::log(static_cast<double>(o.n));
  const double unit = o.unit();

  std::ostringstream csv;
  json rows = json::array();
  if (o.format == "csv") csv << "h,v_curve,w_curve,l_min,l_max\n";
  for (int k = 0; k < o.grid; ++k) {
    const double h = k == o.grid - 1 ? top : top * k / (o.grid - 1);
    double p_v = 0, p_w = 0, v = 0, w = 0, lo = 0, hi = 0;
    check(entnorm_inv_entropy_v(o.n, h, &p_v));
    check(entnorm_inv_entropy_w(o.n, h, &p_w));
    check(entnorm_norm_v(o.n, p_v, o.alpha, &v));
    check(entnorm_norm_w(o.n, p_w, o.alpha, &w));
    check(entnorm_l_min(o.n, o.alpha, h, &lo));
    if (has_upper) check(entnorm_l_max(o.n, o.alpha, h, &hi));
    if (o.format == "csv") {
      csv << csv_number(h / unit) << ',' << csv_number(v) << ',' << csv_number(w) << ','
          << csv_number(lo) << ',' << (has_upper ? csv_number(hi) : std::string()) << '\n';
    } else {
      rows.push_back({{"h", h / unit},
                      {"v_curve", v},
                      {"w_curve", w},
                      {"l_min", lo},
                      {"l_max", opt_json(has_upper, hi)}});
    }
  }
  if (o.format == "csv") return csv.str();
  json doc = {{"n", o.n},
              {"alpha", o.alpha},
              {"units", o.bits ? "bits" : "nats"},
              {"rows", std::move(rows)}};
  return doc.dump(2) + "\n";
}

std::string cmd_eval(const Options& o) {
  if (!o.h && !o.norm) throw Failure{kExitUsage, "eval needs one of --h or --N"};
  const double unit = o.unit();
  json doc = {{"n", o.n}, {"alpha", o.alpha}, {"units", o.bits ? "bits" : "nats"}};
  if (o.h) {
    entnorm_interval env{};
    check(entnorm_envelope(o.n, o.alpha, *o.h, &env));
    doc["h"] = *o.h / unit;
    doc["lower"] = env.lo;
    doc["upper"] = opt_json(env.has_hi, env.hi);
  } else {
    entnorm_interval cond{}, uncond{};
    check(entnorm_entropy_bounds_given_norm(o.n, o.alpha, *o.norm, &cond));
    doc["N"] = *o.norm;
    doc["h_lower"] = cond.lo / unit;
    doc["h_upper"] = cond.hi / unit;
    if (!std::isinf(o.alpha)) {
      check(entnorm_entropy_bounds_given_norm_unconditional(o.n, o.alpha, *o.norm, &uncond));
      doc["unconditional"] = {{"h_lower", uncond.lo / unit}, {"h_upper", uncond.hi / unit}};
    }
  }
  return doc.dump(2) + "\n";
}

std::string cmd_tangent(const Options& o) {
  entnorm_tangent t{};
  check(entnorm_tangent_point(o.n, o.alpha, &t));
  const double unit = o.unit();
  json doc = {{"n", o.n},
              {"alpha", o.alpha},
              {"units", o.bits ? "bits" : "nats"},
              {"p_star", t.p_star},
              {"h_star", t.h_star / unit},
              {"norm_star", t.norm_star},
              {"chi", opt_json(t.has_inflection, t.chi, unit)},
              {"pi_p", opt_json(t.has_inflection, t.pi_p)}};
  return doc.dump(2) + "\n";
}

std::string cmd_verify(const Options& o, bool& violated) {
  if (o.samples < 1) throw Failure{kExitUsage, "--samples must be at least 1"};
  entnorm_verify_report r{};
  check(entnorm_verify_envelope(o.n, o.alpha, o.samples, o.seed, o.y_size, o.workers, &r));
  violated = r.violations_lower + r.violations_upper > 0;
  json doc = {{"n", r.n},
              {"alpha", r.alpha},
              {"y_size", r.y_size},
              {"samples", r.samples},
              {"seed", r.seed},
              {"tolerance", 1e-9},
              {"upper_checked", r.upper_checked != 0},
              {"violations_lower", r.violations_lower},
              {"violations_upper", r.violations_upper},
              {"max_excess", r.max_excess},
              {"passed", !violated}};
  return doc.dump(2) + "\n";
}

std::string cmd_measures(const Options& o) {
  const JointPtr joint = load_joint(o.input);
  const entnorm_joint* j = joint.get();
  std::size_t n = 0, y_size = 0;
  check(entnorm_joint_dims(j, &n, &y_size));
  const int ni = static_cast<int>(n);
  const double unit = o.unit();

  double h = 0, norm = 0, renyi = 0;
  check(entnorm_cond_shannon(j, &h));
  check(entnorm_expected_alpha_norm(j, o.alpha, &norm));
  check(entnorm_cond_renyi(j, o.alpha, &renyi));
  json rnorm = nullptr;
  if (o.alpha != 1.0 && std::isfinite(o.alpha)) {
    double value = 0;
    check(entnorm_cond_rnorm(j, o.alpha, &value));
    rnorm = value / unit;
  }

  json doc = {{"n", n},
              {"y_size", y_size},
              {"alpha", o.alpha},
              {"units", o.bits ? "bits" : "nats"},
              {"cond_shannon", h / unit},
              {"expected_norm", norm},
              {"cond_renyi", renyi / unit},
              {"cond_rnorm", rnorm}};
  if (n < 2) {
    doc["envelope"] = nullptr;
    return doc.dump(2) + "\n";
  }
  entnorm_interval env{};
  check(entnorm_envelope(ni, o.alpha, h, &env));
  doc["envelope"] = interval_json(env);
  doc["on_lower_boundary"] = std::fabs(norm - env.lo) <= 1e-9;
  doc["on_upper_boundary"] = env.has_hi ? json(std::fabs(norm - env.hi) <= 1e-9) : json(nullptr);
  entnorm_interval renyi_iv{};
  check(entnorm_renyi_bounds_given_h(ni, o.alpha, h, &renyi_iv));
  doc["cond_renyi_bounds"] = interval_json(renyi_iv, unit);
  if (o.alpha != 1.0 && std::isfinite(o.alpha)) {
    entnorm_interval rnorm_iv{};
    check(entnorm_rnorm_bounds_given_h(ni, o.alpha, h, &rnorm_iv));
    doc["cond_rnorm_bounds"] = interval_json(rnorm_iv, unit);
  } else {
    doc["cond_rnorm_bounds"] = nullptr;
  }
  return doc.dump(2) + "\n";
}

std::string cmd_channel(const Options& o) {
  if (!o.rho && !o.alpha_given) throw Failure{kExitUsage, "channel needs --rho or --alpha"};
  const ChannelPtr channel = load_channel(o.input);
  const entnorm_channel* c = channel.get();
  std::size_t n_in = 0, n_out = 0;
  check(entnorm_channel_dims(c, &n_in, &n_out));
  const int n = static_cast<int>(n_in);
  if (n < 2) throw Failure{kExitIo, o.input + ": channel needs at least 2 inputs"};
  const double unit = o.unit();

  double mutual = 0;
  check(entnorm_arimoto_mutual_uniform(c, 1.0, &mutual));
  json doc = {{"n_in", n_in},
              {"n_out", n_out},
              {"units", o.bits ? "bits" : "nats"},
              {"mutual_information", mutual / unit}};

  if (o.alpha_given) {
    double arimoto = 0;
    entnorm_interval iv{};
    check(entnorm_arimoto_mutual_uniform(c, o.alpha, &arimoto));
    check(entnorm_mutual_bounds_given_i(n, o.alpha, mutual, &iv));
    doc["alpha"] = o.alpha;
    doc["arimoto_mutual"] = arimoto / unit;
    doc["arimoto_mutual_bounds"] = interval_json(iv, unit);
  }
  if (o.rho) {
    const double rho = *o.rho;
    double e0 = 0, arimoto = 0;
    entnorm_interval iv{};
    check(entnorm_gallager_e0_uniform(c, rho, &e0));
    check(entnorm_arimoto_mutual_uniform(c, 1.0 / (1.0 + rho), &arimoto));
    check(entnorm_e0_bounds_given_i(n, rho, mutual, &iv));
    doc["rho"] = rho;
    doc["e0"] = e0 / unit;
    doc["arimoto_mutual_at_rho"] = arimoto / unit;
    doc["identity_residual"] = std::fabs(e0 - rho * arimoto) / unit;
    doc["e0_bounds"] = interval_json(iv, unit);
  }
  return doc.dump(2) + "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Tight bounds between conditional Shannon entropy and the expected l-alpha norm",
               "ent-norm"};
  app.require_subcommand(1);
  // -h would clash with --h (entropy); subcommands inherit this setting.
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_help_all_flag("--help-all", "Show help for every command");

  auto add_n = [&](CLI::App* cmd) {
    cmd->add_option("--n", o.n, "Alphabet size of X")->required();
  };
  auto add_alpha = [&](CLI::App* cmd, bool required) {
    auto* opt = cmd->add_option("--alpha", o.alpha, "Order of the norm (inf allowed where defined)");
    if (required) opt->required();
    return opt;
  };
  auto add_bits = [&](CLI::App* cmd) {
    cmd->add_flag("--bits", o.bits, "Report entropic quantities in bits instead of nats");
  };
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("--output", o.output, "Write results to this file instead of stdout");
  };

  auto* curve = app.add_subcommand("curve", "Export boundary curves on a uniform entropy grid");
  add_n(curve);
  add_alpha(curve, true);
  curve->add_option("--grid", o.grid, "Number of grid points")->capture_default_str();
  curve->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  add_output(curve);
  add_bits(curve);

  auto* eval = app.add_subcommand("eval", "Evaluate the envelope at --h or entropy bounds at --N");
  add_n(eval);
  add_alpha(eval, true);
  auto* opt_h = eval->add_option("--h", o.h, "Conditional entropy in nats");
  auto* opt_norm = eval->add_option("--N", o.norm, "Expected norm");
  opt_h->excludes(opt_norm);
  add_bits(eval);

  auto* tangent = app.add_subcommand("tangent", "Tangent point and inflection of the v-curve");
  add_n(tangent);
  add_alpha(tangent, true);
  add_bits(tangent);

  auto* verify = app.add_subcommand("verify", "Monte Carlo check of the envelope on random joints");
  add_n(verify);
  add_alpha(verify, true);
  verify->add_option("--samples", o.samples, "Number of random joints")->capture_default_str();
  verify->add_option("--seed", o.seed, "Seed of the sampler")->capture_default_str();
  verify->add_option("--ysize", o.y_size, "Number of outcomes of Y")->capture_default_str();
  verify->add_option("--workers", o.workers, "Worker threads, 0 = all cores")
      ->capture_default_str();
  add_output(verify);

  auto* measures = app.add_subcommand("measures", "Conditional measures of a joint distribution");
  measures->add_option("--input", o.input, "JSON file {\"py\": [...], \"rows\": [[...], ...]}")
      ->required();
  add_alpha(measures, true);
  add_bits(measures);

  auto* channel = app.add_subcommand("channel", "Uniform-input channel measures and bounds");
  channel->add_option("--input", o.input, "JSON file {\"transitions\": [[...], ...]}")->required();
  channel->add_option("--rho", o.rho, "Gallager rho in (-1, inf)");
  auto* channel_alpha = add_alpha(channel, false);
  add_bits(channel);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  o.alpha_given = channel_alpha->count() > 0;

  try {
    std::string text;
    int code = kExitOk;
    if (*curve) {
      text = cmd_curve(o);
    } else if (*eval) {
      text = cmd_eval(o);
    } else if (*tangent) {
      text = cmd_tangent(o);
    } else if (*verify) {
      bool violated = false;
      text = cmd_verify(o, violated);
      if (violated) code = kExitVerifyFailed;
    } else if (*measures) {
      text = cmd_measures(o);
    } else {
      text = cmd_channel(o);
    }
    emit(o, out, text);
    if (code == kExitVerifyFailed) err << "ent-norm: envelope violations found\n";
    return code;
  } catch (const Failure& f) {
    err << "ent-norm: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    err << "ent-norm: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace entnorm::cli
