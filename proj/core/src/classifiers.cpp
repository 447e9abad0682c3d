#include "tshift/classifiers.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace tshift {

using nlohmann::json;

HankelMatrix hankel_matrix(const MomentSeq& gamma, std::size_t n, std::size_t k) {
  if (n + 2 * k >= gamma.size()) {
    throw std::out_of_range("Hankel matrix M(" + std::to_string(n) + "," + std::to_string(k) +
                            ") needs gamma_" + std::to_string(n + 2 * k) + ", have " +
                            std::to_string(gamma.size()) + " moments");
  }
  HankelMatrix h{n, k, Matrix<Rational>(k + 1, std::vector<Rational>(k + 1))};
  for (std::size_t i = 0; i <= k; ++i) {
    for (std::size_t j = 0; j <= k; ++j) h.entries[i][j] = gamma[n + i + j];
  }
  return h;
}

namespace {

// Symmetric elimination: a symmetric matrix is PSD iff every pivot is >= 0
// and a zero pivot has a zero remaining row.
bool psd_by_elimination(Matrix<Rational> a) {
  const std::size_t n = a.size();
  for (std::size_t c = 0; c < n; ++c) {
    if (a[c][c] < 0) return false;
    if (a[c][c] == 0) {
      for (std::size_t r = c + 1; r < n; ++r) {
        if (a[r][c] != 0) return false;
      }
      continue;
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      const Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return true;
}

json subset_json(const std::vector<std::size_t>& idx) {
  json out = json::array();
  for (auto i : idx) out.push_back(i);
  return out;
}

}  // namespace

PsdResult is_psd_exact(const Matrix<Rational>& m) {
  if (m.size() > 7) throw std::invalid_argument("exact PSD test supports size <= 7");
  PsdResult out;
  if (psd_by_elimination(m)) return out;
  for_each_subset(m.size(), [&](const std::vector<std::size_t>& idx) {
    Rational d = determinant(submatrix(m, idx));
    if (d < 0) {
      out.psd = false;
      out.subset = idx;
      out.minor = d;
      return false;
    }
    return true;
  });
  if (out.psd) throw std::logic_error("PSD elimination and minor enumeration disagree");
  return out;
}

std::size_t KProfile::max_k_holding() const {
  std::size_t k = 0;
  for (const auto& level : levels) {
    if (!level.verdict.holds) break;
    k = level.k;
  }
  return k;
}

KProfile k_hyponormality_profile(const SqWeightSeq& w, std::size_t k_max, std::size_t n_max) {
  if (k_max == 0 || k_max > 6) throw std::invalid_argument("k_max must be in 1..6");
  KProfile profile;
  profile.n_max = n_max;
  const std::size_t top = n_max + 2 * k_max;
  std::vector<Rational> weights = w.values(top);
  const MomentSeq gamma = moments(w, top);

  for (std::size_t k = 1; k <= k_max; ++k) {
    KLevel level{k, {}};
    level.verdict.range = {{"n_max", n_max}, {"k", k}};
    for (std::size_t n = 0; n <= n_max; ++n) {
      // M(n,k) / gamma_n has entries prod_{j=n}^{n+i+j-1} w(j), which stay
      // small; PSD-ness and minor signs are unchanged by the positive scale.
      Matrix<Rational> m(k + 1, std::vector<Rational>(k + 1));
      std::vector<Rational> ratio(2 * k + 1);
      ratio[0] = 1;
      for (std::size_t i = 1; i <= 2 * k; ++i) ratio[i] = ratio[i - 1] * weights[n + i - 1];
      for (std::size_t i = 0; i <= k; ++i) {
        for (std::size_t j = 0; j <= k; ++j) m[i][j] = ratio[i + j];
      }
      PsdResult r = is_psd_exact(m);
      if (!r.psd) {
        const Rational true_minor = r.minor * pow(gamma[n], r.subset.size());
        level.verdict.holds = false;
        level.verdict.witness = {{"n", n},
                                 {"k", k},
                                 {"subset", subset_json(r.subset)},
                                 {"minor", to_string(true_minor)}};
        break;
      }
    }
    profile.levels.push_back(std::move(level));
  }

  bool monotone = true;
  for (std::size_t n = 0; n <= n_max; ++n) {
    if (weights[n + 1] < weights[n]) {
      monotone = false;
      break;
    }
  }
  profile.k1_matches_monotonicity = profile.levels.front().verdict.holds == monotone;
  return profile;
}

std::vector<OrderVerdict> alternating_test(std::span<const Rational> a, std::size_t m_max,
                                           std::size_t window) {
  std::vector<OrderVerdict> out;
  for (std::size_t m = 1; m <= m_max; ++m) {
    OrderVerdict ov{m, {}};
    ov.verdict.range = {{"order", m}, {"window", window}};
    const auto diff = forward_difference(a, m, window);
    for (std::size_t k = 0; k <= window; ++k) {
      if (diff[k] > 0) {
        ov.verdict.holds = false;
        ov.verdict.witness = {{"order", m}, {"k", k}, {"difference", to_string(diff[k])}};
        break;
      }
    }
    out.push_back(std::move(ov));
  }
  return out;
}

std::vector<OrderVerdict> alternating_test(std::span<const Real> a, std::size_t m_max,
                                           std::size_t window, const Real& tolerance) {
  std::vector<OrderVerdict> out;
  for (std::size_t m = 1; m <= m_max; ++m) {
    OrderVerdict ov{m, {}};
    ov.verdict.range = {{"order", m}, {"window", window}, {"tolerance", to_string(tolerance, 3)}};
    const auto diff = forward_difference(a, m, window);
    for (std::size_t k = 0; k <= window; ++k) {
      if (diff[k] > tolerance) {
        ov.verdict.holds = false;
        ov.verdict.witness = {{"order", m}, {"k", k}, {"difference", to_string(diff[k], 25)}};
        break;
      }
      if (diff[k] > -tolerance) ov.verdict.indeterminate = true;
    }
    if (!ov.verdict.holds) ov.verdict.indeterminate = false;
    out.push_back(std::move(ov));
  }
  return out;
}

std::vector<OrderVerdict> log_alternating_test(const SqWeightSeq& w, const LogTestOptions& o) {
  if (o.digits < 30) throw std::invalid_argument("log tests need at least 30 digits");
  PrecisionScope scope(o.digits);
  std::vector<Real> logs;
  for (std::size_t n = 0; n <= o.window + o.m_max; ++n) {
    logs.push_back(boost::multiprecision::log(to_real(w(n))));
  }
  const Real tolerance = pow10_neg(o.tolerance_exponent);
  return alternating_test(std::span<const Real>(logs), o.m_max, o.window, tolerance);
}

Verdict hyperexpansive_test(const MomentSeq& gamma, std::size_t n_max, std::size_t j_max) {
  if (n_max + j_max >= gamma.size()) throw std::out_of_range("hyperexpansive test: too few moments");
  Verdict v;
  v.range = {{"n_max", n_max}, {"j_max", j_max}};
  for (std::size_t n = 1; n <= n_max; ++n) {
    for (std::size_t j = 0; j <= j_max; ++j) {
      Rational s(0);
      for (std::size_t i = 0; i <= n; ++i) {
        const Rational term = Rational(binomial(n, i)) * gamma[i + j];
        s += (i % 2 == 0) ? term : Rational(-term);
      }
      if (s > 0) {
        v.holds = false;
        v.witness = {{"n", n}, {"j", j}, {"sum", to_string(s)}};
        return v;
      }
    }
  }
  return v;
}

Verdict m_alt_hyperexpansive_test(const MomentSeq& gamma, std::size_t m, std::size_t j_max) {
  if (m + j_max >= gamma.size()) throw std::out_of_range("alternating test: too few moments");
  Verdict v;
  v.range = {{"m", m}, {"j_max", j_max}};
  for (std::size_t j = 0; j <= j_max; ++j) {
    Rational s(0);
    for (std::size_t i = 0; i <= m; ++i) {
      const Rational term = Rational(binomial(m, i)) * gamma[i + j];
      s += ((m - i) % 2 == 0) ? term : Rational(-term);
    }
    if (s < 0) {
      v.holds = false;
      v.witness = {{"m", m}, {"j", j}, {"sum", to_string(s)}};
      return v;
    }
  }
  return v;
}

Verdict mid_sampling_test(const SqWeightSeq& w, const MidOptions& o) {
  Verdict v;
  json grid = json::array();
  for (const auto& s : o.s_grid) grid.push_back(to_string(s));
  v.range = {{"s_grid", grid},
             {"k_max", o.k_max},
             {"n_max", o.n_max},
             {"digits", o.digits},
             {"tolerance", "1e-" + std::to_string(o.tolerance_exponent)}};
  const std::size_t top = o.n_max + 2 * o.k_max;
  for (const auto& s : o.s_grid) {
    const std::vector<Real> ws = schur_power(w, s, top, o.digits);
    PrecisionScope scope(o.digits + 10);
    const Real tol = pow10_neg(o.tolerance_exponent);
    const Real jacobi_tol = pow10_neg(o.digits);
    for (std::size_t k = 1; k <= o.k_max; ++k) {
      for (std::size_t n = 0; n <= o.n_max; ++n) {
        std::vector<Real> ratio(2 * k + 1);
        ratio[0] = 1;
        for (std::size_t i = 1; i <= 2 * k; ++i) ratio[i] = ratio[i - 1] * ws[n + i - 1];
        Matrix<Real> m(k + 1, std::vector<Real>(k + 1));
        Real scale = 1;
        for (std::size_t i = 0; i <= k; ++i) {
          for (std::size_t j = 0; j <= k; ++j) {
            m[i][j] = ratio[i + j];
            scale = std::max(scale, Real(abs(m[i][j])));
          }
        }
        const auto eig = symmetric_eigenvalues(m, jacobi_tol * scale);
        const Real lowest = *std::min_element(eig.begin(), eig.end());
        if (lowest < -tol * scale) {
          v.holds = false;
          v.witness = {{"s", to_string(s)},
                       {"k", k},
                       {"n", n},
                       {"min_eigenvalue_normalized", to_string(lowest, 12)}};
          return v;
        }
      }
    }
  }
  return v;
}

const char* ContractivityReport::verdict() const {
  if (contractive && expansive) return "isometric";
  if (contractive) return "contractive";
  if (expansive) return "expansive";
  return "neither";
}

namespace {

json extremum_json(const Extremum& e) {
  json j = {{"value", to_string(e.value)},
            {"exact", e.exact},
            {"attained", e.attained},
            {"scanned", e.scanned}};
  if (e.index) j["index"] = *e.index;
  return j;
}

}  // namespace

ContractivityReport contractivity(const SqWeightSeq& w, std::size_t scan_limit) {
  ContractivityReport r;
  const auto sup = supremum(w, scan_limit);
  const auto inf = infimum(w, scan_limit);
  if (inf) {
    r.inf = inf->value;
    r.expansive = inf->value >= 1;
    r.evidence["inf"] = extremum_json(*inf);
  }
  if (sup) {
    r.sup = sup->value;
    r.contractive = sup->value <= 1;
    r.evidence["sup"] = extremum_json(*sup);
  } else {
    r.evidence["sup"] = "unbounded";
  }
  r.exact = sup && inf && sup->exact && inf->exact;
  return r;
}

ContractivityReport contractivity(const Decomposition& dec, std::size_t scan_limit) {
  ContractivityReport r;
  const NormSq norm = operator_norm_sq(dec, scan_limit);
  r.sup = norm.value;
  r.contractive = norm.value <= 1;
  r.exact = norm.exact;
  r.evidence["norm_sq"] = {{"value", to_string(norm.value)},
                           {"exact", norm.exact},
                           {"attained", norm.attained},
                           {"where", norm.where}};

  // Lower bound: every component is a weighted permutation-like map, so the
  // smallest squared singular value is the smallest squared entry.
  std::optional<Rational> low;
  bool exact = true;
  std::string where;
  auto offer = [&](const Rational& v, bool ex, const std::string& what) {
    exact = exact && ex;
    if (!low || v < *low) {
      low = v;
      where = what;
    }
  };
  if (const auto& b = dec.block()) {
    for (const auto& e : b->entries) offer(e.value.value_sq(), true, "block");
  }
  for (const auto& p : dec.diagonal_parts()) offer(p.value.value_sq(), true, "diagonal");
  if (const auto& t = dec.diagonal_tail()) {
    if (auto e = infimum(t->values, scan_limit)) offer(e->value, e->exact, "diagonal-tail");
  }
  if (auto edges = dec.edge_weights()) {
    if (auto e = infimum(*edges, scan_limit)) offer(e->value, e->exact, "shift-edge");
  }
  if (low) {
    r.inf = *low;
    r.expansive = *low >= 1;
    r.evidence["inf_sq"] = {{"value", to_string(*low)}, {"exact", exact}, {"where", where}};
  }
  r.exact = r.exact && exact;
  return r;
}

}  // namespace tshift
