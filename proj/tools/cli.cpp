#include "cli.hpp"

#include <cerrno>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "gimag/channel.hpp"
#include "gimag/fock_oracle.hpp"
#include "gimag/gaussian_state.hpp"
#include "gimag/json_io.hpp"
#include "gimag/measures.hpp"
#include "gimag/verify.hpp"

namespace gimag::cli {

namespace {

// Agreement required between closed-form and oracle rows in `sweep --verify-oracle`.
constexpr double kOracleAgreement = 1e-6;

struct Env {
  Tolerances tol;
  int fock_cutoff = 0;
};

Env read_env() {
  Env env;
  if (const char* s = std::getenv("GI_EPS_PSD"); s && *s) {
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s, &end);
    if (errno || *end || !std::isfinite(v) || v < 0.0) {
      throw Error(Errc::invalid_argument, fmt::format("GI_EPS_PSD: bad value \"{}\"", s));
    }
    env.tol.psd = v;
  }
  if (const char* s = std::getenv("GI_FOCK_CUTOFF"); s && *s) {
    char* end = nullptr;
    errno = 0;
    const long v = std::strtol(s, &end, 10);
    if (errno || *end || v < 1 || v > 4096) {
      throw Error(Errc::invalid_argument, fmt::format("GI_FOCK_CUTOFF: bad value \"{}\"", s));
    }
    env.fock_cutoff = static_cast<int>(v);
  }
  return env;
}

std::complex<double> parse_complex(const std::string& text, const char* flag) {
  const auto comma = text.find(',');
  const auto bad = [&] {
    return Error(Errc::invalid_argument,
                 fmt::format("{} expects \"re,im\" (got \"{}\")", flag, text));
  };
  if (comma == std::string::npos) throw bad();
  const std::string re = text.substr(0, comma);
  const std::string im = text.substr(comma + 1);
  char* end = nullptr;
  const double r = std::strtod(re.c_str(), &end);
  if (re.empty() || *end) throw bad();
  const double i = std::strtod(im.c_str(), &end);
  if (im.empty() || *end) throw bad();
  if (!std::isfinite(r) || !std::isfinite(i)) throw bad();
  return {r, i};
}

struct StateSource {
  std::string file;
  std::optional<double> thermal;
  std::string coherent;
  std::string squeezed;

  void bind(CLI::App* cmd) {
    auto* f = cmd->add_option("--state", file, "State JSON file");
    auto* t = cmd->add_option("--thermal", thermal, "Thermal state with this mean photon number");
    auto* c = cmd->add_option("--coherent", coherent, "Coherent state, alpha given as re,im");
    auto* s = cmd->add_option("--squeezed", squeezed, "Squeezed vacuum, zeta given as re,im");
    f->excludes(t, c, s);
    t->excludes(c, s);
    c->excludes(s);
  }

  GaussianState load(const Tolerances& tol) const {
    if (!file.empty()) return io::state_from_json(io::read_json_file(file), tol);
    if (thermal) return gimag::thermal(*thermal);
    if (!coherent.empty()) return gimag::coherent(parse_complex(coherent, "--coherent"));
    if (!squeezed.empty()) return gimag::squeezed(parse_complex(squeezed, "--squeezed"));
    throw Error(Errc::invalid_argument,
                "no state given (use --state, --thermal, --coherent or --squeezed)");
  }
};

void warn_boundary(const GaussianState& s, std::ostream& err) {
  if (s.near_boundary()) {
    err << fmt::format("warning: state lies within tolerance of the uncertainty boundary "
                       "(margin {:.3e})\n",
                       s.uncertainty_margin());
  }
}

std::string format_violations(const std::vector<PatternViolation>& v) {
  std::string out;
  for (const auto& p : v) out += fmt::format(" {}={:.6g}", p.entry, p.value);
  return out;
}

struct SweepArgs {
  std::string family;
  double from = 0.0;
  double to = 2.0;
  int steps = 41;
  double theta = M_PI / 2;
  double re = 0.0;
  std::string axis = "modulus";
  std::string output;
  bool verify_oracle = false;
  int cutoff = 0;
};

GaussianState sweep_state(const SweepArgs& a, double param) {
  if (a.family == "coherent") return coherent({a.re, param});
  double r = param;
  if (a.axis == "s2") {
    // param = sin^2(theta) sinh^2(2|zeta|)
    const double st = std::abs(std::sin(a.theta));
    if (param < 0.0) throw Error(Errc::invalid_argument, "s2 must be non-negative");
    if (st < 1e-15) {
      if (param > 0.0) {
        throw Error(Errc::invalid_argument, "s2 > 0 is unreachable when sin(theta) = 0");
      }
      r = 0.0;
    } else {
      r = 0.5 * std::asinh(std::sqrt(param) / st);
    }
  } else if (param < 0.0) {
    throw Error(Errc::invalid_argument, "|zeta| must be non-negative");
  }
  return squeezed(std::polar(r, a.theta));
}

int cmd_sweep(const SweepArgs& a, const Env& env, std::ostream& out, std::ostream& err) {
  if (a.family != "coherent" && a.family != "squeezed") {
    throw Error(Errc::invalid_argument, fmt::format("unknown family \"{}\"", a.family));
  }
  if (a.axis != "modulus" && a.axis != "s2") {
    throw Error(Errc::invalid_argument, fmt::format("unknown axis \"{}\"", a.axis));
  }
  if (a.steps < 1 || !(a.to >= a.from) || !std::isfinite(a.from) || !std::isfinite(a.to)) {
    throw Error(Errc::invalid_argument, "empty range");
  }
  std::string csv = "param,M,Mprime\n";
  int mismatches = 0;
  for (int i = 0; i < a.steps; ++i) {
    const double param =
        a.steps == 1 ? a.from : a.from + (a.to - a.from) * i / static_cast<double>(a.steps - 1);
    const GaussianState s = sweep_state(a, param);
    const MeasureReport r = measure(s);
    csv += fmt::format("{:.12g},{:.17g},{:.17g}\n", param, r.M, r.Mprime);
    if (a.verify_oracle) {
      MeasureOptions o;
      o.force_oracle = true;
      o.cutoff = a.cutoff > 0 ? a.cutoff : env.fock_cutoff;
      const MeasureReport ro = measure(s, o);
      const double dev = std::max(std::abs(ro.M - r.M), std::abs(ro.Mprime - r.Mprime));
      if (dev > kOracleAgreement) {
        ++mismatches;
        err << fmt::format("oracle mismatch at param={:.12g}: |diff|={:.3e}\n", param, dev);
      }
    }
  }
  if (a.output.empty()) {
    out << csv;
  } else {
    std::ofstream f(a.output, std::ios::binary);
    if (!f) throw Error(Errc::invalid_argument, fmt::format("cannot write \"{}\"", a.output));
    f << csv;
  }
  if (a.verify_oracle) {
    err << fmt::format("oracle cross-check: {}/{} rows agree within {:.0e}\n",
                       a.steps - mismatches, a.steps, kOracleAgreement);
  }
  return mismatches == 0 ? exit_ok : exit_check_failed;
}

}  // namespace

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::insufficient_cutoff:
    case Errc::non_convergence:
      return exit_numerical;
    default:
      return exit_invalid_input;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Imaginarity of bosonic Gaussian states and channels", "gimag"};
  app.require_subcommand(1);

  StateSource measure_src;
  bool measure_oracle = false;
  int measure_cutoff = 0;
  auto* measure_cmd = app.add_subcommand("measure", "Compute M and M' for a one-mode state");
  measure_src.bind(measure_cmd);
  measure_cmd->add_flag("--oracle", measure_oracle, "Use the Fock-space oracle (1-2 modes)");
  measure_cmd->add_option("--cutoff", measure_cutoff, "Oracle Fock cutoff per mode")
      ->check(CLI::PositiveNumber);

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Emit param,M,Mprime CSV for a state family");
  sweep_cmd->add_option("--family", sweep.family, "coherent | squeezed")->required();
  sweep_cmd->add_option("--from", sweep.from, "Start of the parameter range");
  sweep_cmd->add_option("--to", sweep.to, "End of the parameter range");
  sweep_cmd->add_option("--steps", sweep.steps, "Number of rows");
  sweep_cmd->add_option("--theta", sweep.theta, "Squeezing phase (squeezed family)");
  sweep_cmd->add_option("--re", sweep.re, "Re(alpha) (coherent family; param is Im(alpha))");
  sweep_cmd->add_option("--axis", sweep.axis,
                        "Squeezed parameter: modulus = |zeta|, s2 = sin^2(theta) sinh^2(2|zeta|)");
  sweep_cmd->add_option("--output,-o", sweep.output, "CSV file (default stdout)");
  sweep_cmd->add_flag("--verify-oracle", sweep.verify_oracle,
                      "Cross-check every row against the Fock-space oracle");
  sweep_cmd->add_option("--cutoff", sweep.cutoff, "Oracle Fock cutoff")->check(CLI::PositiveNumber);

  std::string channel_file;
  auto* classify_cmd = app.add_subcommand("classify", "Classify a Gaussian channel");
  classify_cmd->add_option("--channel", channel_file, "Channel JSON file")->required();

  std::string suite = "all";
  std::uint64_t seed = 1;
  int trials = 30;
  auto* verify_cmd = app.add_subcommand("verify", "Run a property suite");
  verify_cmd->add_option("--suite", suite,
                         "all | theorem1 | theorem2 | theorem4 | monotonicity | oracle");
  verify_cmd->add_option("--seed", seed, "RNG seed");
  verify_cmd->add_option("--trials", trials, "Trials per suite");

  StateSource fock_src;
  int fock_cutoff = 0;
  auto* fock_cmd = app.add_subcommand("fock", "Dump the truncated Fock density matrix as JSON");
  fock_src.bind(fock_cmd);
  fock_cmd->add_option("--cutoff", fock_cutoff, "Fock cutoff per mode")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? exit_ok : exit_invalid_input;
  }

  try {
    const Env env = read_env();

    if (*measure_cmd) {
      const GaussianState s = measure_src.load(env.tol);
      warn_boundary(s, err);
      MeasureOptions o;
      o.force_oracle = measure_oracle;
      o.cutoff = measure_cutoff > 0 ? measure_cutoff : env.fock_cutoff;
      out << io::report_to_json(measure(s, o), s).dump(2) << '\n';
      return exit_ok;
    }

    if (*sweep_cmd) return cmd_sweep(sweep, env, out, err);

    if (*classify_cmd) {
      const GaussianChannel ch = io::channel_from_json(io::read_json_file(channel_file), env.tol);
      const RealnessReport rep = inspect_realness(ch, env.tol);
      const RealChannelClass cls = rep.classification();
      const auto line = [&](const char* name, bool ok, const std::vector<PatternViolation>& v) {
        out << fmt::format("  {:<44} {}{}\n", name, ok ? "pass" : "fail",
                           ok ? "" : format_violations(v));
      };
      out << "class: " << to_string(cls) << '\n';
      line("displacement: d(2l) = 0", rep.displacement_ok, rep.displacement_violations);
      line("noise: N(2l-1,2m) = 0", rep.noise_ok, rep.noise_violations);
      line("completely real: T(2l,m) = 0", rep.completely_ok, rep.completely_violations);
      line("covariant real: T(2l-1,2m) = T(2m,2l-1) = 0", rep.covariant_ok,
           rep.covariant_violations);
      return cls == RealChannelClass::NotReal ? exit_check_failed : exit_ok;
    }

    if (*verify_cmd) {
      const VerifyReport rep = run_verify(suite, seed, trials);
      out << format_report(rep);
      return rep.ok() ? exit_ok : exit_check_failed;
    }

    if (*fock_cmd) {
      const GaussianState s = fock_src.load(env.tol);
      warn_boundary(s, err);
      OracleOptions o;
      o.cutoff = fock_cutoff > 0 ? fock_cutoff : env.fock_cutoff;
      out << io::fock_to_json(density_matrix(s, o)).dump(2) << '\n';
      return exit_ok;
    }
    return exit_ok;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const io::json::exception& e) {
    err << "error: malformed JSON: " << e.what() << '\n';
    return exit_invalid_input;
  }
}

}  // namespace gimag::cli
