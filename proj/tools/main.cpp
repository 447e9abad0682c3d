#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tshift/decomposition.hpp"
#include "tshift/grws.hpp"
#include "tshift/report.hpp"
#include "tshift/symbol_parser.hpp"
#include "tshift/verification.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

using nlohmann::json;
using namespace tshift;

int emit(const json& report, const RunConfig& config, const std::string& out_path) {
  const std::string text = render(report, config.format);
  if (out_path.empty()) {
    std::cout << text;
    return kExitOk;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "tshift: cannot write " << out_path << "\n";
    return kExitUsage;
  }
  out << text;
  return kExitOk;
}

GrwsParams grws_from(const std::string& p, const std::string& n, const std::string& d) {
  GrwsParams params{parse_rational(p), parse_rational(n), parse_rational(d)};
  params.validate();
  return params;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted-shift decompositions and classifiers for Toeplitz-type operators", "tshift"};
  app.set_config("--config", "", "key=value file overriding defaults");
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::string format = "json";
  std::string out_path;
  app.add_option("--founders", config.founder_bound, "largest founder index examined");
  app.add_option("--nmax", config.n_max, "Hankel range n for k >= 2");
  app.add_option("--nmax-k1", config.n_max_k1, "range n for monotonicity and k = 1");
  app.add_option("--kmax", config.k_max, "largest k in k-hyponormality profiles");
  app.add_option("--window", config.window, "window for alternation tests");
  app.add_option("--mmax", config.m_max, "largest order in alternation tests");
  app.add_option("--preview", config.preview, "weights listed per orbit");
  app.add_option("--precision", config.precision, "decimal digits for high-precision steps");
  app.add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--seed", config.seed, "seed for randomized checks");
  app.add_option("--out", out_path, "write the report to FILE");

  std::string symbol;
  std::string space;
  auto* decompose_cmd = app.add_subcommand("decompose", "decompose a Toeplitz operator into weighted shifts");
  decompose_cmd->add_option("symbol", symbol, "e.g. \"z^2 zbar^1\"")->required();
  decompose_cmd->add_option("space", space, "bergman-h | wbergman:alpha=A | gdhardy:alpha=A,beta=B")->required();

  auto* classify_cmd = app.add_subcommand("classify", "classify every component of a decomposition");
  classify_cmd->add_option("symbol", symbol)->required();
  classify_cmd->add_option("space", space)->required();
  classify_cmd->add_flag("--mid", config.mid_sampling, "also run Schur-power MID sampling");

  std::vector<std::string> ids;
  bool list_only = false;
  auto* verify_cmd = app.add_subcommand("verify", "run named verification checks (default: all)");
  verify_cmd->add_option("ids", ids, "check ids or 'all'");
  verify_cmd->add_flag("--list", list_only, "list check ids");

  std::string p_text;
  std::string n_text;
  std::string d_text;
  bool corroborate = false;
  auto* sector_cmd = app.add_subcommand("sector", "locate GRWS(p, N, D) in the classification square");
  sector_cmd->add_option("p", p_text)->required();
  sector_cmd->add_option("N", n_text)->required();
  sector_cmd->add_option("D", d_text)->required();
  sector_cmd->add_flag("--corroborate", corroborate, "run the classifiers against the predictions");

  std::size_t atoms = 2;
  std::size_t moment_count = 40;
  auto* berger_cmd = app.add_subcommand("berger", "fit a finitely atomic Berger measure to GRWS moments");
  berger_cmd->add_option("p", p_text)->required();
  berger_cmd->add_option("N", n_text)->required();
  berger_cmd->add_option("D", d_text)->required();
  berger_cmd->add_option("--atoms", atoms, "number of atoms")->check(CLI::Range(1, 12));
  berger_cmd->add_option("--moments", moment_count, "moments used in the residual");

  auto* scan_cmd = app.add_subcommand("sum-scan", "check merged shifts of a sum for monotone weights and norm");
  scan_cmd->add_option("symbol", symbol)->required();
  scan_cmd->add_option("space", space)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    config.format = parse_format(format);
    config.validate();

    if (*decompose_cmd) {
      const Decomposition dec = decompose(parse_symbol_spec(symbol, space));
      return emit(envelope("decompose", decomposition_report(dec, config), config), config, out_path);
    }
    if (*classify_cmd) {
      const Decomposition dec = decompose(parse_symbol_spec(symbol, space));
      return emit(envelope("classify", classification_report(dec, config), config), config, out_path);
    }
    if (*verify_cmd) {
      if (list_only) {
        json listing = json::array();
        for (const auto& c : verification_checks()) {
          listing.push_back({{"id", c.id}, {"criterion", c.criterion}, {"title", c.title}});
        }
        return emit(envelope("verify", {{"checks", listing}}, config), config, out_path);
      }
      if (ids.empty()) ids.push_back("all");
      const auto results = run_checks(ids, config);
      json checks = json::array();
      std::size_t passed = 0;
      for (const auto& r : results) {
        checks.push_back(to_json(r));
        passed += r.passed ? 1 : 0;
      }
      const json payload = {{"checks", checks}, {"passed", passed}, {"total", results.size()}};
      const int code = emit(envelope("verify", payload, config), config, out_path);
      if (code != kExitOk) return code;
      return passed == results.size() ? kExitOk : kExitCheckFailed;
    }
    if (*sector_cmd) {
      const GrwsParams params = grws_from(p_text, n_text, d_text);
      const json payload = sector_report(params, config, corroborate);
      const int code = emit(envelope("sector", payload, config), config, out_path);
      if (code != kExitOk) return code;
      return corroborate && !payload["corroboration"]["consistent"].get<bool>() ? kExitCheckFailed : kExitOk;
    }
    if (*berger_cmd) {
      const GrwsParams params = grws_from(p_text, n_text, d_text);
      const MomentSeq gamma = moments(grws_sequence(params), std::max(moment_count, 2 * atoms + 2));
      BergerFitOptions bo;
      bo.digits = config.precision;
      bo.tolerance_exponent = config.berger_tolerance_exponent;
      json payload = {{"p", to_string(params.p)}, {"N", to_string(params.N)}, {"D", to_string(params.D)},
                      {"atoms_requested", atoms}};
      int status = kExitOk;
      try {
        const BergerFit fit = berger_fit(gamma, atoms, bo);
        payload["raw"] = to_json(fit.raw);
        payload["raw_residual"] = to_string(fit.raw_residual, 6);
        if (fit.snapped) {
          payload["snapped"] = to_json(*fit.snapped);
          payload["snapped_residual"] = to_string(*fit.snapped_residual);
        }
        payload["verify"] = berger_verify(fit.best(), gamma, gamma.size() - 1, config.precision).str();
      } catch (const BergerFitError& e) {
        payload["error"] = e.what();
        status = kExitCheckFailed;
      }
      const int code = emit(envelope("berger", payload, config), config, out_path);
      return code != kExitOk ? code : status;
    }
    if (*scan_cmd) {
      const Decomposition dec = decompose(parse_symbol_spec(symbol, space));
      json shifts = json::array();
      bool monotone = true;
      for (const auto& sh : dec.shifts(config.founder_bound)) {
        const auto w = sh.weights.values(config.n_max_k1 + 1);
        json entry = {{"founder", sh.founder}, {"nondecreasing", true}};
        for (std::size_t n = 0; n < config.n_max_k1; ++n) {
          if (w[n + 1] < w[n]) {
            entry["nondecreasing"] = false;
            entry["witness"] = {{"n", n}, {"w_n", to_string(w[n])}, {"w_n+1", to_string(w[n + 1])}};
            monotone = false;
            break;
          }
        }
        shifts.push_back(entry);
      }
      const NormSq norm = operator_norm_sq(dec);
      const json payload = {{"symbol", dec.provenance().str()},
                            {"space", dec.provenance().space.name()},
                            {"shifts", shifts},
                            {"all_nondecreasing", monotone},
                            {"norm_sq", {{"value", to_string(norm.value)},
                                         {"exact", norm.exact},
                                         {"attained", norm.attained},
                                         {"where", norm.where}}},
                            {"contractive", norm.value <= 1}};
      return emit(envelope("sum-scan", payload, config), config, out_path);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "tshift: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "tshift: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}
