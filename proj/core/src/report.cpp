#include "tshift/report.hpp"

#include <sstream>
#include <stdexcept>

namespace tshift {

using nlohmann::json;

void RunConfig::validate() const {
  if (founder_bound == 0 || n_max == 0 || n_max_k1 == 0 || k_max == 0 || window == 0 ||
      m_max == 0) {
    throw std::invalid_argument("all bounds must be positive");
  }
  if (k_max > 6) throw std::invalid_argument("k_max must be at most 6");
  if (precision < 30) throw std::invalid_argument("precision must be at least 30 digits");
}

json RunConfig::header() const {
  return {{"founder_bound", founder_bound},
          {"n_max", n_max},
          {"n_max_k1", n_max_k1},
          {"k_max", k_max},
          {"window", window},
          {"m_max", m_max},
          {"precision", precision},
          {"log_tolerance", "1e-" + std::to_string(log_tolerance_exponent)},
          {"mid_tolerance", "1e-" + std::to_string(mid_tolerance_exponent)},
          {"berger_tolerance", "1e-" + std::to_string(berger_tolerance_exponent)},
          {"seed", seed}};
}

OutputFormat parse_format(const std::string& name) {
  if (name == "json") return OutputFormat::kJson;
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "text") return OutputFormat::kText;
  throw std::invalid_argument("unknown format '" + name + "' (json, csv, text)");
}

json to_json(const Description& d) {
  json params = json::object();
  for (const auto& [k, v] : d.params) params[k] = v;
  json out = {{"kind", d.kind}, {"params", params}};
  if (!d.children.empty()) {
    json children = json::array();
    for (const auto& c : d.children) children.push_back(to_json(c.describe()));
    out["children"] = children;
  }
  return out;
}

json sqrt_json(const Rational& value_sq) { return {{"sq", to_string(value_sq)}}; }

json to_json(const Verdict& v) {
  json out = {{"verdict", v.holds ? "holds-on-checked-range" : "fails-with-witness"},
              {"range", v.range}};
  if (!v.holds) out["witness"] = v.witness;
  if (v.indeterminate) out["indeterminate"] = true;
  return out;
}

json to_json(const KProfile& p) {
  json levels = json::array();
  for (const auto& l : p.levels) {
    json j = to_json(l.verdict);
    j["k"] = l.k;
    levels.push_back(j);
  }
  return {{"levels", levels},
          {"max_k_holding", p.max_k_holding()},
          {"n_max", p.n_max},
          {"k1_matches_monotonicity", p.k1_matches_monotonicity}};
}

json to_json(const Sector& s) {
  json predicted = json::array();
  for (const auto& p : s.predicted) predicted.push_back({{"claim", p.name()}, {"basis", p.basis}});
  return {{"tag", s.name()}, {"predicted", predicted}};
}

json to_json(const AtomicMeasure& m) {
  json atoms = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json a = {{"location", to_string(m.atoms[i], 25)}, {"mass", to_string(m.masses[i], 25)}};
    if (m.is_exact()) {
      a["location_exact"] = to_string((*m.exact_atoms)[i]);
      a["mass_exact"] = to_string((*m.exact_masses)[i]);
    }
    atoms.push_back(a);
  }
  return {{"atoms", atoms}, {"exact", m.is_exact()}};
}

json to_json(const ContractivityReport& r) {
  return {{"verdict", r.verdict()},
          {"contractive", r.contractive},
          {"expansive", r.expansive},
          {"sup_sq", to_string(r.sup)},
          {"inf_sq", to_string(r.inf)},
          {"exact", r.exact},
          {"evidence", r.evidence}};
}

namespace {

json coherent_json(const CoherentValue& v) {
  json out = {{"value_sq", to_string(v.value_sq())}, {"value", sqrt_json(v.value_sq())}};
  if (!v.amplitude.is_nonnegative_real()) out["amplitude"] = to_string(v.amplitude);
  return out;
}

json values_json(const SqWeightSeq& w, std::size_t count) {
  json out = json::array();
  for (std::size_t n = 0; n < count; ++n) out.push_back(to_string(w(n)));
  return out;
}

json map_json(const AffineIndexMap& m) {
  return {{"multiplier", m.multiplier},
          {"offset", m.offset},
          {"start", m.start},
          {"orbit_formula", m.formula()}};
}

json shift_json(const OrbitShift& sh, std::size_t preview) {
  json indices = json::array();
  for (std::size_t n = 0; n < preview; ++n) indices.push_back(sh.index(n));
  json out = {{"founder", sh.founder},
              {"indices", indices},
              {"weights_sq", values_json(sh.weights, preview)},
              {"descriptor", to_json(sh.weights.describe())}};
  json factors = json::array();
  for (const auto& f : sh.factorization) factors.push_back(to_json(f.describe()));
  out["factorization"] = factors;
  return out;
}

}  // namespace

json decomposition_report(const Decomposition& dec, const RunConfig& config) {
  json out = {{"space", dec.provenance().space.name()},
              {"symbol", dec.provenance().str()},
              {"family", dec.family_key()}};
  json notes = json::array();
  if (const auto& b = dec.block()) {
    json entries = json::array();
    for (const auto& e : b->entries) {
      json j = coherent_json(e.value);
      j["row"] = e.row;
      j["col"] = e.col;
      entries.push_back(j);
    }
    const CommutatorDiagonal cd = block_commutator_diagonal(*b);
    json diag = json::array();
    for (const auto& x : cd.entries) diag.push_back(to_string(x));
    out["block"] = {{"first", b->first},
                    {"dim", b->dim},
                    {"entries", entries},
                    {"commutator_diagonal", diag},
                    {"normal", cd.normal},
                    {"hyponormal", cd.hyponormal},
                    {"cohyponormal", cd.cohyponormal}};
  }
  json diagonal = json::array();
  for (const auto& p : dec.diagonal_parts()) {
    json j = coherent_json(p.value);
    j["index"] = p.index;
    diagonal.push_back(j);
  }
  out["diagonal"] = diagonal;
  if (const auto& t = dec.diagonal_tail()) {
    out["diagonal_tail"] = {{"start", t->start},
                            {"values_sq", values_json(t->values, config.preview)},
                            {"descriptor", to_json(t->values.describe())}};
  }
  if (const auto& m = dec.orbit_map()) {
    json shifts = json::array();
    json founders = json::array();
    for (const auto& sh : dec.shifts(config.founder_bound)) {
      founders.push_back(sh.founder);
      shifts.push_back(shift_json(sh, config.preview));
    }
    out["orbits"] = {{"map", map_json(*m)},
                     {"founder_bound", config.founder_bound},
                     {"founders", founders},
                     {"shifts", shifts}};
    if (m->offset < 0) {
      notes.push_back(
          "orbit elements 2^n(j-2delta)+2delta follow from f(m)=2(m-delta); the variant "
          "2^n(j-delta)+2delta is inconsistent with the weight denominators (j-2delta)");
    }
  }
  out["truncation"] = {{"dropped_terms", dec.dropped_terms()},
                       {"error_bound", to_string(dec.truncation_error())}};
  out["notes"] = notes;
  return out;
}

namespace {

json shift_classification(const SqWeightSeq& w, const RunConfig& config) {
  const KProfile k1 = k_hyponormality_profile(w, 1, config.n_max_k1);
  const KProfile profile = k_hyponormality_profile(w, config.k_max, config.n_max);
  LogTestOptions lo;
  lo.m_max = config.m_max;
  lo.window = config.window;
  lo.digits = config.precision;
  lo.tolerance_exponent = config.log_tolerance_exponent;
  json log_orders = json::array();
  bool log_holds = true;
  for (const auto& ov : log_alternating_test(w, lo)) {
    json j = to_json(ov.verdict);
    j["order"] = ov.m;
    log_holds = log_holds && ov.verdict.holds;
    log_orders.push_back(j);
  }
  json out = {{"hyponormal", to_json(k1.levels.front().verdict)},
              {"k_profile", to_json(profile)},
              {"log_completely_alternating", {{"holds", log_holds}, {"orders", log_orders}}},
              {"contractivity", to_json(contractivity(w))}};
  if (config.mid_sampling) {
    MidOptions mo;
    mo.k_max = std::min<std::size_t>(config.k_max, 3);
    mo.n_max = config.n_max;
    mo.digits = config.precision;
    mo.tolerance_exponent = config.mid_tolerance_exponent;
    out["mid_sampling"] = to_json(mid_sampling_test(w, mo));
  }
  return out;
}

}  // namespace

json classification_report(const Decomposition& dec, const RunConfig& config) {
  json out = {{"space", dec.provenance().space.name()},
              {"symbol", dec.provenance().str()},
              {"family", dec.family_key()}};
  bool hyponormal = true;
  std::size_t k_min = config.k_max;
  if (const auto& b = dec.block()) {
    const CommutatorDiagonal cd = block_commutator_diagonal(*b);
    json diag = json::array();
    for (const auto& x : cd.entries) diag.push_back(to_string(x));
    out["block"] = {{"commutator_diagonal", diag},
                    {"normal", cd.normal},
                    {"hyponormal", cd.hyponormal},
                    {"cohyponormal", cd.cohyponormal}};
    hyponormal = hyponormal && cd.hyponormal;
    // A block is k-hyponormal for every k iff it is normal; otherwise only the
    // hyponormal case gives k = 1.
    if (!cd.normal) k_min = cd.hyponormal ? std::min<std::size_t>(k_min, 1) : 0;
  }
  json shifts = json::array();
  bool any_shift = false;
  for (const auto& sh : dec.shifts(config.founder_bound)) {
    any_shift = true;
    json j = shift_classification(sh.weights, config);
    j["founder"] = sh.founder;
    hyponormal = hyponormal && j["hyponormal"]["verdict"] == "holds-on-checked-range";
    k_min = std::min<std::size_t>(k_min, j["k_profile"]["max_k_holding"].get<std::size_t>());
    json factors = json::array();
    for (const auto& f : sh.factorization) {
      const KProfile fp = k_hyponormality_profile(f, config.k_max, config.n_max);
      factors.push_back({{"descriptor", to_json(f.describe())}, {"k_profile", to_json(fp)}});
    }
    j["factors"] = factors;
    shifts.push_back(j);
  }
  out["shifts"] = shifts;
  if (const auto& t = dec.diagonal_tail()) {
    out["diagonal_tail"] = {{"normal", true}, {"values_sq", values_json(t->values, config.preview)}};
  }
  const ContractivityReport cr = contractivity(dec);
  out["operator"] = {{"hyponormal", hyponormal},
                     {"k_profile_min", k_min},
                     {"contractivity", to_json(cr)},
                     {"founders_checked", config.founder_bound}};
  // A unilateral weighted shift's adjoint has commutator -w(0) at the founder,
  // so the adjoint is never hyponormal once a shift component is present.
  out["adjoint"] = {{"hyponormal", !any_shift && hyponormal && (!dec.block() || block_commutator_diagonal(*dec.block()).normal)},
                    {"derived_from", any_shift ? "shift components" : "block and diagonal parts"}};
  return out;
}

json sector_corroboration(const GrwsParams& params, const Sector& sector, const RunConfig& config) {
  const SqWeightSeq w = grws_sequence(params);
  const KProfile profile = k_hyponormality_profile(w, config.k_max, config.n_max);
  const KProfile k1 = k_hyponormality_profile(w, 1, config.n_max_k1);
  json checks = json::array();
  bool consistent = true;
  auto record = [&](const std::string& claim, const std::string& status, json detail) {
    if (status == "contradicted") consistent = false;
    checks.push_back({{"claim", claim}, {"status", status}, {"detail", std::move(detail)}});
  };

  // Monotonicity: increasing iff N < D, decreasing iff N > D.
  const bool expected_increasing = params.N <= params.D;
  record("monotonicity", k1.levels.front().verdict.holds == expected_increasing ? "corroborated" : "contradicted",
         to_json(k1.levels.front().verdict));

  LogTestOptions lo;
  lo.m_max = config.m_max;
  lo.window = config.window;
  lo.digits = config.precision;
  lo.tolerance_exponent = config.log_tolerance_exponent;
  std::optional<json> log_failure;
  for (const auto& ov : log_alternating_test(w, lo)) {
    if (!ov.verdict.holds) {
      log_failure = ov.verdict.witness;
      break;
    }
  }

  for (const auto& p : sector.predicted) {
    switch (p.claim) {
      case Claim::kUnweighted: {
        bool all_one = true;
        for (std::size_t n = 0; n <= config.n_max_k1; ++n) all_one = all_one && w(n) == 1;
        record(p.name(), all_one ? "corroborated" : "contradicted", {{"n_max", config.n_max_k1}});
        break;
      }
      case Claim::kMid:
        record(p.name(), !log_failure && profile.max_k_holding() == config.k_max ? "corroborated" : "contradicted",
               log_failure ? *log_failure : json(to_json(profile)));
        break;
      case Claim::kBernsteinWeights: {
        const auto values = w.values(config.window + config.m_max + 1);
        json fail;
        for (const auto& ov : alternating_test(values, config.m_max, config.window)) {
          if (!ov.verdict.holds) {
            fail = ov.verdict.witness;
            break;
          }
        }
        record(p.name(), fail.is_null() ? "corroborated" : "contradicted", fail);
        break;
      }
      case Claim::kCompletelyHyperexpansive: {
        const MomentSeq gamma = moments(w, config.m_max + config.window);
        const Verdict v = hyperexpansive_test(gamma, config.m_max, config.window);
        record(p.name(), v.holds ? "corroborated" : "contradicted", to_json(v));
        break;
      }
      case Claim::kSubnormal:
        record(p.name(), profile.max_k_holding() == config.k_max ? "corroborated" : "contradicted",
               to_json(profile));
        break;
      case Claim::kFinitelyAtomicBerger: {
        const std::size_t r = static_cast<std::size_t>(sector.k) + 1;
        const MomentSeq gamma = moments(w, std::max<std::size_t>(2 * r + 10, 30));
        BergerFitOptions bo;
        bo.digits = config.precision;
        bo.tolerance_exponent = config.berger_tolerance_exponent;
        try {
          const BergerFit fit = berger_fit(gamma, r, bo);
          record(p.name(), "corroborated",
                 {{"atoms", to_json(fit.best())}, {"raw_residual", to_string(fit.raw_residual, 6)}});
        } catch (const BergerFitError& e) {
          record(p.name(), "contradicted", e.what());
        }
        break;
      }
      case Claim::kNotMid:
        record(p.name(), log_failure ? "corroborated" : "not-checked",
               log_failure ? *log_failure : json("log alternation holds on the checked range"));
        break;
      case Claim::kKHyponormal:
        if (static_cast<std::size_t>(p.order) > config.k_max) {
          record(p.name(), "not-checked", "order beyond k_max");
        } else {
          record(p.name(), profile.max_k_holding() >= static_cast<std::size_t>(p.order) ? "corroborated" : "contradicted",
                 to_json(profile));
        }
        break;
      case Claim::kNotKHyponormal:
        if (static_cast<std::size_t>(p.order) > config.k_max) {
          record(p.name(), "not-checked", "order beyond k_max");
        } else {
          record(p.name(), profile.max_k_holding() < static_cast<std::size_t>(p.order) ? "corroborated" : "not-checked",
                 to_json(profile));
        }
        break;
    }
  }
  return {{"consistent", consistent}, {"checks", checks}};
}

json sector_report(const GrwsParams& params, const RunConfig& config, bool corroborate) {
  const Sector s = locate_sector(params);
  json out = {{"p", to_string(params.p)},
              {"N", to_string(params.N)},
              {"D", to_string(params.D)},
              {"sector", to_json(s)}};
  if (corroborate) out["corroboration"] = sector_corroboration(params, s, config);
  return out;
}

json envelope(const std::string& command, json payload, const RunConfig& config) {
  return {{"schema_version", kSchemaVersion},
          {"command", command},
          {"config", config.header()},
          {"result", std::move(payload)}};
}

std::string render_json(const json& report) { return report.dump(2) + "\n"; }

namespace {

std::string leaf_string(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

void flatten(const json& j, const std::string& path, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    if (j.empty()) out.emplace_back(path, "{}");
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(it.value(), path.empty() ? it.key() : path + "/" + it.key(), out);
    }
  } else if (j.is_array()) {
    if (j.empty()) out.emplace_back(path, "[]");
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "/" + std::to_string(i), out);
  } else {
    out.emplace_back(path, leaf_string(j));
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string render_csv(const json& report) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::ostringstream os;
  os << "path,value\n";
  for (const auto& [p, v] : rows) os << csv_field(p) << "," << csv_field(v) << "\n";
  return os.str();
}

std::string render_text(const json& report) {
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::ostringstream os;
  for (const auto& [p, v] : rows) os << p << " = " << v << "\n";
  return os.str();
}

std::string render(const json& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::kJson:
      return render_json(report);
    case OutputFormat::kCsv:
      return render_csv(report);
    case OutputFormat::kText:
      return render_text(report);
  }
  return render_json(report);
}

}  // namespace tshift
