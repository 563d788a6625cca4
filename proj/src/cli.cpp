#include "zigzag/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "zigzag/errors.hpp"
#include "zigzag/gamma_modules.hpp"
#include "zigzag/hecke_tree.hpp"
#include "zigzag/llc.hpp"

namespace zigzag::cli {

namespace {

using nlohmann::json;

/// Twice the start of the terminal region: τ ≥ t+n−1 for odd b, τ > t+n−1 for even b.
std::int64_t terminal_index(std::int64_t b) { return 2 * ((b + 1) / 2) - (b % 2 == 1 ? 2 : 1); }

/// Index h ∈ {−1, …, terminal_index(b)} of the region containing τ − t = delta.
std::int64_t region_index(std::int64_t b, Valuation delta) {
  const std::int64_t last = terminal_index(b);
  if (delta.is_infinite()) return last;
  return std::clamp<std::int64_t>(delta.twice(), -1, last);
}

std::string offset_string(std::int64_t j) { return j == 0 ? "t" : "t+" + std::to_string(j); }

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("range \"" + text + "\" must look like a:b");
  try {
    std::size_t used_lo = 0;
    std::size_t used_hi = 0;
    const std::string lo_text = text.substr(0, colon);
    const std::string hi_text = text.substr(colon + 1);
    const std::int64_t lo = std::stoll(lo_text, &used_lo);
    const std::int64_t hi = std::stoll(hi_text, &used_hi);
    if (used_lo != lo_text.size() || used_hi != hi_text.size() || lo > hi) throw std::invalid_argument(text);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw ParseError("range \"" + text + "\" must look like a:b with a <= b");
  }
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw ParseError("\"" + item + "\" in \"" + text + "\" is not an integer");
    }
  }
  return out;
}

std::string yes_no(bool value) { return value ? "yes" : "no"; }

std::string rep_string(const std::optional<GaloisRep>& rep) { return rep ? rep->to_string() : "-"; }

std::string valuation_string(const std::optional<Valuation>& v) { return v ? v->to_string() : ""; }

struct Settings {
  CliConfig config;
  std::string config_path;
  std::optional<int> precision;
  std::optional<int> residue_degree;
  std::optional<int> caveat_disk;

  CliConfig resolve() const {
    CliConfig out = config;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ParseError("cannot read config file \"" + config_path + "\"");
      out = parse_config(in, out);
    }
    if (precision) out.precision = *precision;
    if (residue_degree) out.residue_degree = *residue_degree;
    if (caveat_disk) out.engine.caveat_disk = *caveat_disk;
    return out;
  }
};

// ---------------------------------------------------------------------------
// predict and sweep

int cmd_predict(const CliConfig& cfg, std::int64_t p, std::int64_t k, const std::string& ap, bool markdown,
                std::ostream& out) {
  const ApExpression expr = parse_ap(ap, p, cfg.residue_degree, cfg.precision);
  const Prediction prediction = predict(p, k, expr.evaluate(), cfg.engine);
  if (markdown) {
    out << prediction_markdown(prediction, expr.to_string());
  } else {
    out << prediction_json(prediction, expr.to_string()).dump() << "\n";
  }
  return kOk;
}

int cmd_sweep(const CliConfig& cfg, std::int64_t p, const std::string& range, const std::string& ap,
              std::ostream& out) {
  const auto [k_lo, k_hi] = parse_range(range);
  const ApExpression expr = parse_ap(ap, p, cfg.residue_degree, cfg.precision);
  const ApValue a_p = expr.evaluate();
  const std::string ap_text = expr.to_string();
  out << "p,k,ap,v,b,tau,t,case,rep,provenance\n";
  for (std::int64_t k = k_lo; k <= k_hi; ++k) {
    std::vector<std::string> row = {std::to_string(p), std::to_string(k), ap_text, expr.slope().to_string()};
    try {
      const Prediction pr = predict(p, k, a_p, cfg.engine);
      row.push_back(pr.b ? std::to_string(*pr.b) : "");
      row.push_back(valuation_string(pr.tau));
      row.push_back(valuation_string(pr.t));
      row.push_back(pr.branch ? pr.branch->to_string() : "");
      row.push_back(pr.rep ? pr.rep->to_string() : "");
      row.push_back(to_string(pr.provenance));
    } catch (const Error& e) {
      row.insert(row.end(), {"", "", "", "error", e.what(), "ERROR"});
    }
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
    out << "\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// filtration

int cmd_filtration(std::int64_t p, std::int64_t r, std::int64_t imax, std::ostream& out) {
  if (!is_prime(p)) throw InvalidArgument(std::to_string(p) + " is not prime");
  if (r < 0 || imax < 0) throw InvalidArgument("r and imax must be nonnegative");
  const std::int64_t b = mod_floor(r - 1, p - 1) + 1;
  bool ok = true;
  out << "# theta filtration p=" << p << " r=" << r << " b=" << b << "\n\n";
  out << "| i | dim V_r^(i) | max(0, r-i(p+1)+1) | dim V_r^(i)/V_r^(i+1) | J_2i | J_2i+1 | theta^i iso |\n";
  out << "|---|---|---|---|---|---|---|\n";
  for (std::int64_t i = 0; i <= imax; ++i) {
    const std::int64_t dim = dim_theta_filtration(p, r, i);
    const std::int64_t formula = dim_theta_filtration_formula(p, r, i);
    const std::int64_t quotient = dim - dim_theta_filtration(p, r, i + 1);
    std::string even = "0";
    std::string odd = "0";
    if (i <= jh_max_index(b)) {
      const auto [j_even, j_odd] = jh_factor_labels(p, b, i);
      even = j_even.to_string();
      odd = j_odd.to_string();
    }
    std::string iso = "-";
    if (dim > 0) {
      const bool holds = verify_subquotient_iso(p, r, i);
      iso = yes_no(holds);
      ok = ok && holds;
    }
    ok = ok && dim == formula;
    out << "| " << i << " | " << dim << " | " << formula << " | " << quotient << " | " << even << " | " << odd
        << " | " << iso << " |\n";
  }
  const DimensionReport report = column_and_diagonal_sums(p, b);
  out << "\n| identity | holds |\n|---|---|\n";
  for (const auto& check : report.checks) out << "| " << check.name << " | " << yes_no(check.passed) << " |\n";
  ok = ok && report.all_passed();
  out << "\nfiltration: " << (ok ? "ok" : "FAILED") << "\n";
  return ok ? kOk : kCheckFailed;
}

// ---------------------------------------------------------------------------
// llc

int cmd_llc(const CliConfig& cfg, std::int64_t p, bool map, const std::string& input, std::ostream& out) {
  const FieldPtr field = GaloisField::make(p, cfg.residue_degree);
  json doc;
  try {
    doc = json::parse(input);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("input is not JSON: ") + e.what());
  }
  if (map) {
    json labels = json::array();
    for (const auto& label : ll_map(galois_rep_from_json(field, doc))) labels.push_back(to_json(label));
    out << labels.dump() << "\n";
    return kOk;
  }
  if (!doc.is_array()) throw ParseError("--unmap expects a JSON array of labels");
  std::vector<SmoothRepLabel> labels;
  for (const auto& item : doc) labels.push_back(smooth_label_from_json(field, item));
  out << to_json(ll_inverse(field, labels)).dump() << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// hecke

int cmd_hecke(std::int64_t p, std::int64_t r, const std::string& coeffs, int times, int precision, int degree,
              std::ostream& out) {
  const CoefficientRing ring{p, precision, degree};
  const std::vector<std::int64_t> values = parse_int_list(coeffs);
  const auto rows = static_cast<std::size_t>(r + 1);
  ModMatrix v = ModMatrix::Zero(r + 1, degree);
  if (values.size() == rows) {
    for (std::size_t i = 0; i < rows; ++i) v(static_cast<Eigen::Index>(i), 0) = values[i];
  } else if (values.size() == rows * static_cast<std::size_t>(degree)) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      v(static_cast<Eigen::Index>(i) / degree, static_cast<Eigen::Index>(i) % degree) = values[i];
    }
  } else {
    throw InvalidArgument("--coeffs needs r+1 or (r+1)*f integers, got " + std::to_string(values.size()));
  }
  TreeFunction f = TreeFunction::elementary(ring, r, TreeVertex{}, reduce_mod(v, ring.modulus()));
  f = apply_T_power(f, times);
  json doc = to_json(f);
  doc["apply_t"] = times;
  if (r == 0) {
    const ModMatrix total = total_sum_functional(f);
    const ModMatrix alternating = alternating_sum_functional(f);
    doc["total_sum"] = std::vector<std::int64_t>(total.data(), total.data() + degree);
    doc["alternating_sum"] = std::vector<std::int64_t>(alternating.data(), alternating.data() + degree);
  }
  out << doc.dump(2) << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// check suites

struct SuiteResult {
  std::int64_t rows = 0;
  std::int64_t failures = 0;
};

ApValue ap_value(const CliConfig& cfg, std::int64_t p, const std::string& text) {
  return parse_ap(text, p, cfg.residue_degree, cfg.precision).evaluate();
}

SuiteResult suite_local_constancy(const CliConfig& cfg, const std::vector<std::int64_t>& primes,
                                  std::optional<std::int64_t> k_flag, const std::string& ap_flag,
                                  const std::vector<std::int64_t>& t_primes, std::ostream& out) {
  std::vector<std::pair<std::int64_t, std::string>> cases = {{4, "p"}, {5, "p^(3/2)"}, {3, "u*p^(1/2)"}};
  if (k_flag) cases = {{*k_flag, ap_flag.empty() ? "p" : ap_flag}};
  SuiteResult result;
  out << "| p | k | ap | t' | k' | base | nearby | berger bound | verdict |\n";
  out << "|---|---|---|---|---|---|---|---|---|\n";
  for (const std::int64_t p : primes) {
    for (const auto& [k, ap] : cases) {
      const ApValue a_p = ap_value(cfg, p, ap);
      for (const std::int64_t tp : t_primes) {
        const LocalConstancyReport report = local_constancy_conflict(p, k, a_p, tp, cfg.engine);
        ++result.rows;
        // A conflict is only a failure where the bound guarantees constancy.
        if (report.verdict == Verdict::CONFLICT && report.berger_bound) ++result.failures;
        out << "| " << p << " | " << k << " | " << ap << " | " << tp << " | " << report.k_nearby << " | "
            << rep_string(report.base.rep) << " | " << rep_string(report.nearby.rep) << " | "
            << yes_no(report.berger_bound) << " | " << to_string(report.verdict) << " |\n";
      }
    }
  }
  return result;
}

SuiteResult suite_blz(const std::vector<std::int64_t>& primes, std::ostream& out) {
  SuiteResult result;
  out << "| p | b | m | r | tau | t | p divides binomial | BLZ | zig-zag | verdict | expected |\n";
  out << "|---|---|---|---|---|---|---|---|---|---|---|\n";
  for (const std::int64_t p : primes) {
    for (std::int64_t m = 1; m <= 2; ++m) {
      for (const std::int64_t b : {2 * m + 1, 2 * m + 2}) {
        if (b > p - 1) continue;
        const BlzReport report = blz_consistency(p, b, m);
        const Consistency expected = b % 2 == 1 ? Consistency::CONSISTENT : Consistency::INCONSISTENT;
        ++result.rows;
        if (report.verdict != expected) ++result.failures;
        out << "| " << p << " | " << b << " | " << m << " | " << report.r << " | " << report.tau.to_string() << " | "
            << report.t.to_string() << " | " << yes_no(report.kummer_divisible) << " | "
            << report.blz_rep.to_string() << " | " << report.zigzag_rep.to_string() << " | "
            << to_string(report.verdict) << " | " << to_string(expected) << " |\n";
      }
    }
  }
  return result;
}

SuiteResult suite_breuil(const CliConfig& cfg, const std::vector<std::int64_t>& primes, std::ostream& out) {
  SuiteResult result;
  out << "| p | ap | v(ap^2+p) | Breuil | zig-zag at k' | k' | agree |\n";
  out << "|---|---|---|---|---|---|---|\n";
  for (const std::int64_t p : primes) {
    const auto ctx = PadicContext::make(p, cfg.residue_degree, cfg.precision);
    const std::int64_t k = 2 * p + 1;
    const std::int64_t k_nearby = k + ipow(p, 3) * (p - 1);
    for (std::int64_t A = 1; A < p; ++A) {
      for (std::int64_t B = 0; B < 5; ++B) {
        const ExactQuadratic a_p = ExactQuadratic(ctx, A, B) * ExactQuadratic::uniformizer_power(ctx, 1);
        const GaloisRep breuil = breuil_weight_reduction(p, k, a_p);
        const auto [branch, zigzag] = chotomy_prediction(zigzag_params(p, k_nearby, a_p));
        const bool agree = equivalent(breuil, zigzag);
        ++result.rows;
        if (!agree) ++result.failures;
        const ExactQuadratic shifted = a_p * a_p + ExactQuadratic::uniformizer_power(ctx, 2);
        out << "| " << p << " | (" << A << "+" << B << "*sqrt(p))*p^(1/2) | " << shifted.valuation().to_string()
            << " | " << breuil.to_string() << " | " << zigzag.to_string() << " | " << k_nearby << " | "
            << yes_no(agree) << " |\n";
      }
    }
  }
  return result;
}

SuiteResult suite_theta(const std::vector<std::int64_t>& primes, std::ostream& out) {
  SuiteResult result;
  out << "| p | v | compatible |\n|---|---|---|\n";
  for (const std::int64_t p : primes) {
    for (std::int64_t h = 1; h <= 5; ++h) {
      const bool holds = theta_compatibility(p, Valuation::halves(h));
      ++result.rows;
      if (!holds) ++result.failures;
      out << "| " << p << " | " << Valuation::halves(h).to_string() << " | " << yes_no(holds) << " |\n";
    }
  }
  return result;
}

SuiteResult suite_irreducibility(const CliConfig& cfg, const std::vector<std::int64_t>& primes,
                                 std::optional<std::pair<std::int64_t, std::int64_t>> range, std::ostream& out) {
  SuiteResult result;
  out << "| p | k range | slopes | violations |\n|---|---|---|---|\n";
  std::vector<IrreducibilityViolation> all;
  for (const std::int64_t p : primes) {
    std::vector<Valuation> slopes;
    for (std::int64_t h = 1; h <= p - 1; h += 2) slopes.push_back(Valuation::halves(h));
    const auto [k_lo, k_hi] = range.value_or(std::pair<std::int64_t, std::int64_t>{2, 10 * p});
    const auto violations = irreducibility_conjecture_scan(p, k_lo, k_hi, slopes, cfg.engine);
    ++result.rows;
    result.failures += static_cast<std::int64_t>(violations.size());
    std::string slope_text;
    for (const auto& v : slopes) slope_text += (slope_text.empty() ? "" : " ") + v.to_string();
    out << "| " << p << " | " << k_lo << ":" << k_hi << " | " << slope_text << " | " << violations.size() << " |\n";
    all.insert(all.end(), violations.begin(), violations.end());
  }
  for (const auto& v : all) {
    out << "violation p=" << v.p << " k=" << v.k << " v=" << v.v.to_string() << ": " << v.detail << "\n";
  }
  return result;
}

SuiteResult suite_determinant(const std::vector<std::int64_t>& primes, std::ostream& out) {
  SuiteResult result;
  out << "| p | b | regions | expected det | mismatches |\n|---|---|---|---|---|\n";
  for (const std::int64_t p : primes) {
    const FieldPtr field = GaloisField::make(p, 2);
    for (std::int64_t b = 1; b <= p - 1; ++b) {
      const std::int64_t expected = mod_floor(b + 1, p - 1);
      std::int64_t mismatches = 0;
      const auto offsets = chotomy_region_offsets(b);
      for (const Valuation& delta : offsets) {
        const GaloisRep rep = formal_chotomy(field, b, delta, Valuation::integer(0));
        if (mod_floor(inertial_determinant(rep), p - 1) != expected) ++mismatches;
      }
      ++result.rows;
      if (mismatches) ++result.failures;
      out << "| " << p << " | " << b << " | " << offsets.size() << " | w^" << expected << " | " << mismatches
          << " |\n";
    }
  }
  return result;
}

SuiteResult suite_gr19(const CliConfig& cfg, const std::vector<std::int64_t>& primes, std::ostream& out) {
  SuiteResult result;
  out << "| p | region | cases | cross-check failures |\n|---|---|---|---|\n";
  for (const std::int64_t p : primes) {
    if (p < 5) throw InvalidArgument("the gr19 suite needs p >= 5");
    const auto ctx = PadicContext::make(p, cfg.residue_degree, cfg.precision);
    std::map<std::int64_t, std::pair<std::int64_t, std::int64_t>> by_region;
    for (std::int64_t m = 1; m <= 3 * p; ++m) {
      const std::int64_t r = 3 + m * (p - 1);
      for (std::int64_t A = 1; A < p; ++A) {
        for (std::int64_t B = 0; B < p; ++B) {
          const ExactQuadratic a_p = ExactQuadratic(ctx, A, B) * ExactQuadratic::uniformizer_power(ctx, 3);
          const auto [branch, rep] = chotomy_prediction(zigzag_params(p, r + 2, a_p));
          const Gr19Constraints constraints = gr19_constraints(p, r, a_p);
          const std::int64_t h = region_index(3, constraints.tau - constraints.t);
          auto& [cases, failures] = by_region[h];
          ++cases;
          if (!llc_cross_check(rep, constraints.pattern)) ++failures;
        }
      }
    }
    for (const auto& [h, counts] : by_region) {
      ++result.rows;
      result.failures += counts.second;
      out << "| " << p << " | " << region_label(3, Valuation::halves(h)) << " | " << counts.first << " | "
          << counts.second << " |\n";
    }
  }
  return result;
}

}  // namespace

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (const char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string region_label(std::int64_t b, Valuation delta) {
  const std::int64_t h = region_index(b, delta);
  if (h < 0) return "τ < t";
  if (h == terminal_index(b)) return (b % 2 == 1 ? "τ ≥ " : "τ > ") + offset_string(h / 2);
  if (h % 2 == 0) return "τ = " + offset_string(h / 2);
  return offset_string(h / 2) + " < τ < " + offset_string(h / 2 + 1);
}

json prediction_json(const Prediction& prediction, const std::string& ap) {
  json j;
  if (prediction.rep) {
    j = to_json(*prediction.rep);
  } else {
    j["kind"] = "none";
  }
  j["p"] = prediction.p;
  j["k"] = prediction.k;
  j["ap"] = ap;
  j["v"] = prediction.v.to_string();
  j["provenance"] = to_string(prediction.provenance);
  if (prediction.branch) j["case"] = prediction.branch->to_string();
  if (prediction.b) j["b"] = *prediction.b;
  if (prediction.tau) j["tau"] = prediction.tau->to_string();
  if (prediction.t) j["t"] = prediction.t->to_string();
  if (prediction.caveat_m) j["caveat_m"] = *prediction.caveat_m;
  if (prediction.formal_zigzag) j["zigzag"] = to_json(*prediction.formal_zigzag);
  j["notes"] = prediction.notes;
  return j;
}

std::string prediction_markdown(const Prediction& prediction, const std::string& ap) {
  std::ostringstream out;
  out << "## p = " << prediction.p << ", k = " << prediction.k << ", a_p = " << ap << "\n\n";
  out << "| field | value |\n|---|---|\n";
  out << "| slope | " << prediction.v.to_string() << " |\n";
  out << "| provenance | " << to_string(prediction.provenance) << " |\n";
  out << "| representation | " << rep_string(prediction.rep) << " |\n";
  if (prediction.branch) out << "| case | " << prediction.branch->to_string() << " |\n";
  if (prediction.b) out << "| b | " << *prediction.b << " |\n";
  if (prediction.tau) out << "| tau | " << prediction.tau->to_string() << " |\n";
  if (prediction.t) out << "| t | " << prediction.t->to_string() << " |\n";
  if (prediction.caveat_m) out << "| caveat m | " << *prediction.caveat_m << " |\n";
  if (prediction.formal_zigzag) out << "| zig-zag alone | " << prediction.formal_zigzag->to_string() << " |\n";
  for (const auto& note : prediction.notes) out << "| note | " << note << " |\n";
  if (prediction.b && prediction.rep) {
    const std::int64_t b = *prediction.b;
    std::optional<std::int64_t> selected;
    if (prediction.tau && prediction.t && prediction.t->is_finite()) {
      selected = region_index(b, *prediction.tau - *prediction.t);
    }
    const FieldPtr& field = prediction.rep->field();
    out << "\n### Chotomy timeline for b = " << b << "\n\n";
    out << "| region | case | representation | selected |\n|---|---|---|---|\n";
    std::optional<std::int64_t> previous;
    for (const Valuation& delta : chotomy_region_offsets(b)) {
      if (previous == region_index(b, delta)) continue;
      previous = region_index(b, delta);
      const Branch branch = zigzag_branch(b, delta, Valuation::integer(0));
      const GaloisRep rep = formal_chotomy(field, b, delta, Valuation::integer(0));
      const bool here = selected && *selected == region_index(b, delta);
      out << "| " << region_label(b, delta) << " | " << branch.to_string() << " | " << rep.to_string() << " | "
          << (here ? "<--" : "") << " |\n";
    }
  }
  return out.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reductions of crystalline representations at half-integral slope", "zigzag"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings settings;
  app.add_option("--config", settings.config_path, "key=value configuration file");
  app.add_option("--precision", settings.precision, "p-adic precision M in pi-adic digits");
  app.add_option("--residue-degree", settings.residue_degree, "residue degree f");
  app.add_option("--caveat-disk", settings.caveat_disk, "caveat disk exponent s0");

  std::int64_t p = 0;
  std::int64_t k = 0;
  std::int64_t r = 0;
  std::string ap;

  auto* predict_cmd = app.add_subcommand("predict", "reduction of V_{k,a_p}");
  bool as_json = false;
  bool as_md = false;
  predict_cmd->add_option("--p", p, "prime")->required();
  predict_cmd->add_option("--k", k, "weight")->required();
  predict_cmd->add_option("--ap", ap, "a_p expression")->required();
  auto* json_flag = predict_cmd->add_flag("--json", as_json, "emit JSON (default)");
  predict_cmd->add_flag("--md", as_md, "emit a markdown table")->excludes(json_flag);

  auto* sweep_cmd = app.add_subcommand("sweep", "predictions over a weight range");
  std::string k_range;
  std::string emit = "csv";
  sweep_cmd->add_option("--p", p, "prime")->required();
  sweep_cmd->add_option("--k-range", k_range, "inclusive range a:b")->required();
  sweep_cmd->add_option("--ap", ap, "a_p expression")->required();
  sweep_cmd->add_option("--emit", emit, "output format")->check(CLI::IsMember({"csv"}));

  auto* filtration_cmd = app.add_subcommand("filtration", "theta filtration of Sym^r");
  std::int64_t imax = 0;
  filtration_cmd->add_option("--p", p, "prime")->required();
  filtration_cmd->add_option("--r", r, "degree")->required();
  filtration_cmd->add_option("--imax", imax, "largest filtration index")->required();

  auto* llc_cmd = app.add_subcommand("llc", "semisimple mod p dictionary");
  bool map = false;
  bool unmap = false;
  std::string input;
  llc_cmd->add_option("--p", p, "prime")->required();
  auto* map_flag = llc_cmd->add_flag("--map", map, "Galois representation to smooth labels");
  auto* unmap_flag = llc_cmd->add_flag("--unmap", unmap, "smooth labels to Galois representation");
  map_flag->excludes(unmap_flag);
  llc_cmd->add_option("--input", input, "JSON document")->required();

  auto* hecke_cmd = app.add_subcommand("hecke", "Hecke operator on compact induction");
  std::string coeffs;
  int times = 1;
  int hecke_precision = 2;
  int hecke_degree = 1;
  hecke_cmd->add_option("--p", p, "prime")->required();
  hecke_cmd->add_option("--r", r, "degree")->required()->check(CLI::NonNegativeNumber);
  hecke_cmd->add_option("--coeffs", coeffs, "value at the identity vertex, comma separated")->required();
  hecke_cmd->add_option("--apply-t", times, "number of applications of T")->check(CLI::NonNegativeNumber);
  hecke_cmd->add_option("--M", hecke_precision, "coefficients modulo p^M")->check(CLI::PositiveNumber);
  hecke_cmd->add_option("--f", hecke_degree, "coefficients in W(F_{p^f})")->check(CLI::PositiveNumber);

  auto* check_cmd = app.add_subcommand("check", "consistency suites");
  std::string suite;
  std::string primes_text;
  std::optional<std::int64_t> check_k;
  std::string t_primes_text = "1,2,3";
  check_cmd
      ->add_option("--suite", suite, "suite name")
      ->required()
      ->check(CLI::IsMember(
          {"local-constancy", "blz", "breuil", "theta", "irreducibility", "determinant", "gr19"}));
  check_cmd->add_option("--p", primes_text, "prime or comma-separated primes");
  check_cmd->add_option("--k", check_k, "weight (local-constancy)");
  check_cmd->add_option("--ap", ap, "a_p expression (local-constancy)");
  check_cmd->add_option("--t-prime", t_primes_text, "comma-separated t' (local-constancy)");
  check_cmd->add_option("--k-range", k_range, "weight range a:b (irreducibility)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    const CliConfig cfg = settings.resolve();
    if (predict_cmd->parsed()) return cmd_predict(cfg, p, k, ap, as_md, out);
    if (sweep_cmd->parsed()) return cmd_sweep(cfg, p, k_range, ap, out);
    if (filtration_cmd->parsed()) return cmd_filtration(p, r, imax, out);
    if (llc_cmd->parsed()) {
      if (!map && !unmap) throw ParseError("llc needs --map or --unmap");
      return cmd_llc(cfg, p, map, input, out);
    }
    if (hecke_cmd->parsed()) return cmd_hecke(p, r, coeffs, times, hecke_precision, hecke_degree, out);

    const auto primes_or = [&](std::vector<std::int64_t> fallback) {
      return primes_text.empty() ? fallback : parse_int_list(primes_text);
    };
    SuiteResult result;
    if (suite == "local-constancy") {
      result = suite_local_constancy(cfg, primes_or({5}), check_k, ap, parse_int_list(t_primes_text), out);
    } else if (suite == "blz") {
      result = suite_blz(primes_or({7, 11}), out);
    } else if (suite == "breuil") {
      result = suite_breuil(cfg, primes_or({5}), out);
    } else if (suite == "theta") {
      result = suite_theta(primes_or({7, 11}), out);
    } else if (suite == "irreducibility") {
      std::optional<std::pair<std::int64_t, std::int64_t>> range;
      if (!k_range.empty()) range = parse_range(k_range);
      result = suite_irreducibility(cfg, primes_or({5, 7}), range, out);
    } else if (suite == "determinant") {
      result = suite_determinant(primes_or({5, 7, 11}), out);
    } else {
      result = suite_gr19(cfg, primes_or({5, 7}), out);
    }
    out << "\nsuite " << suite << ": " << result.rows << " rows, " << result.failures << " failures\n";
    return result.failures == 0 ? kOk : kCheckFailed;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kUsageError;
  }
}

}  // namespace zigzag::cli
