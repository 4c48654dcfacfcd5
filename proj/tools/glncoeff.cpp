// Command line surface for the decomposition, image-membership, and
// coefficient-estimation routines. Matrices travel as JSON, scan tables as
// CSV; all numbers are printed with 17 significant digits so output is both
// byte-stable and lossless for doubles.
//
// Exit codes: 0 ok, 2 parse error, 3 singular input, 4 image verification
// failure, 5 estimation failure, 6 positivity violation.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gln/decomp.hpp"
#include "gln/eisenstein.hpp"
#include "gln/kappa_image.hpp"
#include "gln/linalg.hpp"
#include "gln/reps.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitSingular = 3;
constexpr int kExitVerification = 4;
constexpr int kExitEstimation = 5;
constexpr int kExitPositivity = 6;

struct ParseFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Minimal JSON emitter with stable key order and fixed number formatting.
class JsonWriter {
 public:
  JsonWriter& begin_object() { return token("{", true); }
  JsonWriter& end_object() { return close("}"); }
  JsonWriter& begin_array() { return token("[", true); }
  JsonWriter& end_array() { return close("]"); }

  JsonWriter& key(const std::string& k) {
    separate();
    out_ += '"';
    out_ += k;
    out_ += "\":";
    pending_value_ = true;
    return *this;
  }
  JsonWriter& value(double v) { return raw(fmt17(v)); }
  JsonWriter& value(long long v) { return raw(std::to_string(v)); }
  JsonWriter& value(unsigned long long v) { return raw(std::to_string(v)); }
  JsonWriter& value(int v) { return raw(std::to_string(v)); }
  JsonWriter& value(bool v) { return raw(v ? "true" : "false"); }
  JsonWriter& value(const std::string& v) {
    std::string quoted = "\"";
    for (char c : v) {
      if (c == '"' || c == '\\') quoted += '\\';
      quoted += c;
    }
    quoted += '"';
    return raw(quoted);
  }

  const std::string& str() const { return out_; }

 private:
  JsonWriter& token(const char* t, bool opens) {
    separate();
    out_ += t;
    if (opens) stack_.push_back(true);
    return *this;
  }
  JsonWriter& close(const char* t) {
    out_ += t;
    stack_.pop_back();
    pending_value_ = false;
    return *this;
  }
  JsonWriter& raw(const std::string& t) {
    separate();
    out_ += t;
    return *this;
  }
  void separate() {
    if (pending_value_) {
      pending_value_ = false;
      return;
    }
    if (!stack_.empty() && !stack_.back()) out_ += ',';
    if (!stack_.empty() && stack_.back()) stack_.back() = false;
  }

  std::string out_;
  std::vector<bool> stack_;  // true while the open container is still empty
  bool pending_value_ = false;
};

gln::SquareMatrix parse_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseFailure("cannot open matrix file: " + path);
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ParseFailure("invalid JSON in " + path + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("rows")) {
    throw ParseFailure("matrix file must be an object with \"n\" and \"rows\"");
  }
  if (!doc["n"].is_number_integer()) throw ParseFailure("\"n\" must be an integer");
  const int n = doc["n"].get<int>();
  if (n < 1) throw ParseFailure("matrix order must be >= 1");
  const auto& rows = doc["rows"];
  if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
    throw ParseFailure("\"rows\" must hold exactly n arrays");
  }
  gln::SquareMatrix m(n);
  for (int i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw ParseFailure("every row must hold exactly n numbers");
    }
    for (int j = 0; j < n; ++j) {
      const auto& cell = row[static_cast<std::size_t>(j)];
      if (!cell.is_number()) throw ParseFailure("matrix entries must be numbers");
      m(i, j) = cell.get<double>();
    }
  }
  if (!m.all_finite()) throw ParseFailure("matrix entries must be finite");
  return m;
}

std::vector<double> parse_double_list(const std::string& csv, int expected, const char* what) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      double v = std::stod(item, &used);
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ParseFailure(std::string(what) + ": cannot parse number '" + item + "'");
    }
  }
  if (expected >= 0 && static_cast<int>(out.size()) != expected) {
    throw ParseFailure(std::string(what) + ": expected " + std::to_string(expected) +
                       " comma-separated values");
  }
  return out;
}

void emit_matrix(JsonWriter& w, const gln::SquareMatrix& m) {
  w.begin_object().key("n").value(m.order()).key("rows").begin_array();
  for (int i = 0; i < m.order(); ++i) {
    w.begin_array();
    for (int j = 0; j < m.order(); ++j) w.value(m(i, j));
    w.end_array();
  }
  w.end_array().end_object();
}

void emit_vector(JsonWriter& w, std::span<const double> v) {
  w.begin_array();
  for (double x : v) w.value(x);
  w.end_array();
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void finish(const JsonWriter& w, const Stopwatch& timer) {
  std::cout << w.str() << "\n";
  std::cerr << "elapsed_ms: " << timer.elapsed_ms() << "\n";
}

int run_decompose(const std::string& mode, const std::string& matrix_path,
                  const gln::ToleranceConfig& tol) {
  Stopwatch timer;
  const gln::SquareMatrix g = parse_matrix_file(matrix_path);

  JsonWriter w;
  w.begin_object().key("command").value(std::string("decompose"));
  w.key("inputs").begin_object();
  w.key("mode").value(mode).key("matrix");
  emit_matrix(w, g);
  w.key("ortho_tol").value(tol.ortho_tol).key("minor_tol").value(tol.minor_tol);
  w.end_object();

  w.key("outputs").begin_object();
  if (mode == "iwasawa") {
    const gln::IwasawaFactors f = gln::iwasawa(g, tol);
    const gln::SquareMatrix rebuilt =
        gln::multiply(f.n_part, gln::multiply(gln::SquareMatrix::diagonal(f.a_part), f.k_part));
    w.key("n_part");
    emit_matrix(w, f.n_part);
    w.key("a_part");
    emit_vector(w, f.a_part);
    w.key("k_part");
    emit_matrix(w, f.k_part);
    w.key("reconstruction_error").value(gln::max_abs_diff(rebuilt, g));
  } else {
    const gln::CartanFactors f = gln::cartan(g, tol);
    w.key("k_part");
    emit_matrix(w, f.k_part);
    w.key("p_part");
    emit_matrix(w, f.p_part);
    w.key("reconstruction_error").value(gln::max_abs_diff(gln::multiply(f.k_part, f.p_part), g));
  }
  w.end_object();
  w.key("seed").value(0);
  w.end_object();
  finish(w, timer);
  return 0;
}

int run_kappa_image(int n, int samples, std::uint64_t seed, const gln::ToleranceConfig& tol) {
  Stopwatch timer;
  std::string csv = "sample_id,leading_min,trailing_min,in_image,preimage_err\n";
  int in_image_count = 0;
  int preimage_ok = 0;
  double worst_err = 0.0;
  bool verification_failed = false;

  for (int i = 0; i < samples; ++i) {
    const gln::SquareMatrix b = gln::haar_sample(n, seed, static_cast<std::uint64_t>(i));
    const gln::MembershipReport report = gln::membership(b, tol);
    double lead_min = report.leading_minors[0];
    double trail_min = report.trailing_minors[0];
    for (double m : report.leading_minors) lead_min = std::min(lead_min, m);
    for (double m : report.trailing_minors) trail_min = std::min(trail_min, m);

    csv += std::to_string(i);
    csv += ',';
    csv += fmt17(lead_min);
    csv += ',';
    csv += fmt17(trail_min);
    csv += ',';
    csv += report.in_image ? '1' : '0';
    csv += ',';
    if (report.in_image) {
      ++in_image_count;
      try {
        const gln::PreimageCheck check = gln::preimage_with_roundtrip(b, tol);
        ++preimage_ok;
        worst_err = std::max(worst_err, check.kappa_roundtrip_error);
        csv += fmt17(check.kappa_roundtrip_error);
      } catch (const gln::VerificationFailure&) {
        verification_failed = true;
        csv += "failed";
      }
    }
    csv += '\n';
  }

  std::cout << csv;
  std::cerr << "summary: total=" << samples << " in_image=" << in_image_count
            << " preimage_ok=" << preimage_ok << " max_preimage_err=" << fmt17(worst_err) << "\n";
  std::cerr << "elapsed_ms: " << timer.elapsed_ms() << "\n";
  return verification_failed ? kExitVerification : 0;
}

int run_coefficient(int n, int r, const std::string& nu_csv, const std::string& matrix_path,
                    long long samples, std::uint64_t seed, bool with_oracle, bool with_operator,
                    int oracle_nodes) {
  Stopwatch timer;
  const gln::SquareMatrix x = parse_matrix_file(matrix_path);
  const gln::ACharacter nu{parse_double_list(nu_csv, n, "--nu")};
  if (x.order() != n) throw ParseFailure("matrix order does not match --n");
  if (r < 0 || r > n) throw ParseFailure("--r must lie in [0, n]");
  if (with_oracle && n != 2) throw ParseFailure("--oracle is only available for --n 2");

  JsonWriter w;
  w.begin_object().key("command").value(std::string("coefficient"));
  w.key("inputs").begin_object();
  w.key("n").value(n).key("r").value(r).key("nu");
  emit_vector(w, nu.exponents);
  w.key("matrix");
  emit_matrix(w, x);
  w.key("samples").value(samples);
  w.end_object();

  const gln::CoefficientSpec spec(n, r, nu, x);
  const gln::MCEstimate est = gln::psi_estimate(spec, samples, seed);

  w.key("outputs").begin_object();
  w.key("trace_mean").value(est.mean);
  w.key("trace_stderr").value(est.stderr_);
  w.key("n_samples").value(est.n_samples);
  w.key("all_samples_positive").value(est.all_samples_positive);
  if (with_operator) {
    const gln::OperatorEstimate op = gln::phi_estimate(spec, samples, seed);
    w.key("operator_mean");
    emit_matrix(w, op.mean_matrix);
    w.key("operator_stderr");
    emit_matrix(w, op.stderr_matrix);
  }
  if (with_oracle) {
    const double oracle = gln::o2_quadrature(spec, oracle_nodes);
    w.key("oracle_value").value(oracle);
    w.key("oracle_nodes").value(oracle_nodes);
    w.key("abs_deviation").value(std::abs(oracle - est.mean));
  }
  w.end_object();
  w.key("seed").value(static_cast<unsigned long long>(seed));
  w.end_object();
  finish(w, timer);
  return 0;
}

int run_positivity_scan(int n, int trials, long long samples, std::uint64_t seed,
                        const std::string& out_csv) {
  Stopwatch timer;
  const gln::PositivityScan scan = gln::positivity_scan(n, trials, samples, seed);

  std::string csv = "trial,r,nu_exponents,trace_mean,trace_stderr,all_samples_positive\n";
  for (const gln::ScanRow& row : scan.rows) {
    csv += std::to_string(row.trial);
    csv += ',';
    csv += std::to_string(row.r);
    csv += ',';
    for (std::size_t i = 0; i < row.nu_exponents.size(); ++i) {
      if (i > 0) csv += ';';
      csv += fmt17(row.nu_exponents[i]);
    }
    csv += ',';
    csv += fmt17(row.estimate.mean);
    csv += ',';
    csv += fmt17(row.estimate.stderr_);
    csv += ',';
    csv += row.estimate.all_samples_positive ? '1' : '0';
    csv += '\n';
  }
  std::ofstream out(out_csv);
  if (!out) throw ParseFailure("cannot open output file: " + out_csv);
  out << csv;

  JsonWriter w;
  w.begin_object().key("command").value(std::string("positivity-scan"));
  w.key("inputs").begin_object();
  w.key("n").value(n).key("trials").value(trials).key("samples").value(samples);
  w.key("out_csv").value(out_csv);
  w.end_object();
  w.key("outputs").begin_object();
  w.key("rows").value(static_cast<long long>(scan.rows.size()));
  w.key("all_pass").value(scan.all_pass);
  w.end_object();
  w.key("seed").value(static_cast<unsigned long long>(seed));
  w.end_object();
  finish(w, timer);
  return scan.all_pass ? 0 : kExitPositivity;
}

int run_weyl_check(int n, const std::string& delta_csv, const std::string& nu_csv,
                   const std::string& matrix_path, long long samples, std::uint64_t seed) {
  Stopwatch timer;
  const gln::SquareMatrix x = parse_matrix_file(matrix_path);
  if (x.order() != n) throw ParseFailure("matrix order does not match --n");
  const std::vector<double> raw = parse_double_list(delta_csv, n, "--delta");
  std::vector<int> eps;
  for (double v : raw) {
    if (v != 0.0 && v != 1.0) throw ParseFailure("--delta entries must be 0 or 1");
    eps.push_back(static_cast<int>(v));
  }
  const gln::MCharacter delta{eps};
  const gln::ACharacter nu{parse_double_list(nu_csv, n, "--nu")};

  const gln::WeylInvarianceReport report = gln::weyl_invariance_check(delta, nu, x, samples, seed);

  JsonWriter w;
  w.begin_object().key("command").value(std::string("weyl-check"));
  w.key("inputs").begin_object();
  w.key("n").value(n).key("delta");
  w.begin_array();
  for (int e : delta.eps) w.value(e);
  w.end_array();
  w.key("nu");
  emit_vector(w, nu.exponents);
  w.key("matrix");
  emit_matrix(w, x);
  w.key("samples").value(samples);
  w.end_object();
  w.key("outputs").begin_object();
  w.key("entries").begin_array();
  for (const gln::WeylCheckEntry& e : report.entries) {
    w.begin_object();
    w.key("sigma").value(e.label);
    w.key("mean").value(e.estimate.mean);
    w.key("stderr").value(e.estimate.stderr_);
    w.end_object();
  }
  w.end_array();
  w.key("max_abs_difference").value(report.max_abs_difference);
  w.key("pass").value(report.pass);
  w.end_object();
  w.key("seed").value(static_cast<unsigned long long>(seed));
  w.end_object();
  finish(w, timer);
  return report.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Iwasawa/Cartan decompositions and principal coefficient estimation"};
  app.require_subcommand(1);

  gln::ToleranceConfig tol;

  auto* dec = app.add_subcommand("decompose", "Factor a matrix (JSON report on stdout)");
  std::string mode;
  std::string matrix_path;
  dec->add_option("--mode", mode, "iwasawa or cartan")
      ->required()
      ->check(CLI::IsMember({"iwasawa", "cartan"}));
  dec->add_option("--matrix", matrix_path, "matrix JSON file")->required();
  dec->add_option("--ortho-tol", tol.ortho_tol, "orthogonality tolerance");
  dec->add_option("--minor-tol", tol.minor_tol, "minor cutoff");
  dec->add_option("--eig-tol", tol.eig_tol, "eigensolver off-diagonal target");
  dec->add_option("--max-sweeps", tol.max_sweeps, "eigensolver sweep budget");

  auto* ki = app.add_subcommand("kappa-image", "Image membership scan (CSV on stdout)");
  int ki_n = 2;
  int ki_samples = 100;
  std::uint64_t seed = 0;
  ki->add_option("--n", ki_n, "matrix order")->required()->check(CLI::PositiveNumber);
  ki->add_option("--samples", ki_samples, "number of samples")
      ->required()
      ->check(CLI::PositiveNumber);
  ki->add_option("--seed", seed, "64-bit seed")->required();

  auto* coef = app.add_subcommand("coefficient", "Estimate a trace coefficient (JSON on stdout)");
  int c_n = 2;
  int c_r = 0;
  long long c_samples = 10000;
  std::string nu_csv;
  bool with_oracle = false;
  bool with_operator = false;
  int oracle_nodes = 512;
  coef->add_option("--n", c_n, "matrix order")->required()->check(CLI::PositiveNumber);
  coef->add_option("--r", c_r, "character index")->required();
  coef->add_option("--nu", nu_csv, "comma-separated real exponents")->required();
  coef->add_option("--matrix", matrix_path, "evaluation point JSON file")->required();
  coef->add_option("--samples", c_samples, "sample count")->check(CLI::PositiveNumber);
  coef->add_option("--seed", seed, "64-bit seed");
  coef->add_flag("--oracle", with_oracle, "cross-check against the order-2 quadrature");
  coef->add_option("--oracle-nodes", oracle_nodes, "quadrature nodes per component");
  coef->add_flag("--operator", with_operator, "include the operator-valued estimate");

  auto* scan = app.add_subcommand("positivity-scan", "Trace positivity scan (CSV to file)");
  int s_n = 2;
  int s_trials = 10;
  long long s_samples = 20000;
  std::string out_csv = "scan.csv";
  scan->add_option("--n", s_n, "matrix order")->required()->check(CLI::PositiveNumber);
  scan->add_option("--trials", s_trials, "number of sampled points")->check(CLI::PositiveNumber);
  scan->add_option("--samples", s_samples, "samples per estimate")->check(CLI::PositiveNumber);
  scan->add_option("--seed", seed, "64-bit seed");
  scan->add_option("--out", out_csv, "output CSV path");

  auto* weyl = app.add_subcommand("weyl-check", "Permutation invariance check (JSON on stdout)");
  int w_n = 3;
  long long w_samples = 20000;
  std::string delta_csv;
  weyl->add_option("--n", w_n, "matrix order")->required()->check(CLI::PositiveNumber);
  weyl->add_option("--delta", delta_csv, "comma-separated 0/1 sign exponents")->required();
  weyl->add_option("--nu", nu_csv, "comma-separated real exponents")->required();
  weyl->add_option("--matrix", matrix_path, "evaluation point JSON file")->required();
  weyl->add_option("--samples", w_samples, "samples per estimate")->check(CLI::PositiveNumber);
  weyl->add_option("--seed", seed, "64-bit seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (dec->parsed()) return run_decompose(mode, matrix_path, tol);
    if (ki->parsed()) return run_kappa_image(ki_n, ki_samples, seed, tol);
    if (coef->parsed()) {
      try {
        return run_coefficient(c_n, c_r, nu_csv, matrix_path, c_samples, seed, with_oracle,
                               with_operator, oracle_nodes);
      } catch (const ParseFailure&) {
        throw;
      } catch (const gln::Error& e) {
        std::cerr << "estimation failure: " << e.what() << "\n";
        return kExitEstimation;
      }
    }
    if (scan->parsed()) {
      try {
        return run_positivity_scan(s_n, s_trials, s_samples, seed, out_csv);
      } catch (const ParseFailure&) {
        throw;
      } catch (const gln::Error& e) {
        std::cerr << "estimation failure: " << e.what() << "\n";
        return kExitEstimation;
      }
    }
    if (weyl->parsed()) {
      try {
        return run_weyl_check(w_n, delta_csv, nu_csv, matrix_path, w_samples, seed);
      } catch (const ParseFailure&) {
        throw;
      } catch (const gln::Error& e) {
        std::cerr << "estimation failure: " << e.what() << "\n";
        return kExitEstimation;
      }
    }
  } catch (const ParseFailure& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const gln::SingularInput& e) {
    std::cerr << "singular input: " << e.what() << "\n";
    return kExitSingular;
  } catch (const gln::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
