#pragma once

// Report builders behind the inept command-line tool. Each subcommand turns
// validated parameters into a Table (CSV or JSON) or a JSON document; the
// executable only parses flags and writes the result.
//
// Numbers are written with 12 significant digits and no locale dependence.
// JSON documents carry "version", "command" and a "config" echo.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "inept/delivery_sim.hpp"
#include "inept/entanglement.hpp"
#include "inept/inept_map.hpp"
#include "inept/nonlocality.hpp"
#include "inept/states.hpp"
#include "inept/version.hpp"

namespace inept::cli {

using json = nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitSelfTest = 4;

inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// x rounded to 12 significant digits, so JSON serialization prints exactly
/// those digits. Non-finite values become null.
inline json number(double x) {
  if (!std::isfinite(x)) return nullptr;
  return std::stod(format_number(x));
}

// ---------------------------------------------------------------------------
// Tables

using Cell = std::variant<std::monostate, double, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

inline std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out += ',';
    out += t.columns[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      if (const auto* d = std::get_if<double>(&row[i])) {
        out += format_number(*d);
      } else if (const auto* b = std::get_if<bool>(&row[i])) {
        out += *b ? '1' : '0';
      }
    }
    out += '\n';
  }
  return out;
}

inline json to_json(const Table& t, const std::string& command, const json& config) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json r = json::array();
    for (const auto& c : row) {
      if (const auto* d = std::get_if<double>(&c)) {
        r.push_back(number(*d));
      } else if (const auto* b = std::get_if<bool>(&c)) {
        r.push_back(*b ? 1 : 0);
      } else {
        r.push_back(nullptr);
      }
    }
    rows.push_back(std::move(r));
  }
  return {{"version", kVersion}, {"command", command}, {"config", config}, {"columns", t.columns}, {"rows", rows}};
}

inline json envelope(const std::string& command, json config) {
  return {{"version", kVersion}, {"command", command}, {"config", std::move(config)}};
}

// ---------------------------------------------------------------------------
// state

inline json state_report(double a, double s) {
  const PrepParams p(a, s);
  const auto rho = apply_map(psi_a(a), s);

  json re = json::array(), im = json::array();
  for (std::size_t i = 0; i < 4; ++i) {
    json rr = json::array(), ii = json::array();
    for (std::size_t j = 0; j < 4; ++j) {
      rr.push_back(number(rho(i, j).real()));
      ii.push_back(number(rho(i, j).imag()));
    }
    re.push_back(rr);
    im.push_back(ii);
  }

  const double c = concurrence_xstate(p);
  const double m = horodecki_m(rho);
  const auto w = lhvt_decompose(p);

  json lhvt = {{"applicable", c > 0.0}, {"in_region", c > 0.0 && w.feasible}, {"c", number(w.c)},
               {"feasible", w.feasible}, {"degenerate", w.degenerate}};
  json sep = json::array();
  for (double d : w.sep_diag) sep.push_back(number(d));
  lhvt["sep_diag"] = sep;
  json tags = json::array();
  for (auto k : w.violated_constraints) tags.push_back(constraint_tag(k));
  lhvt["violated_constraints"] = tags;

  json doc = envelope("state", {{"a", number(a)}, {"s", number(s)}});
  doc["matrix"] = {{"re", re}, {"im", im}};
  doc["concurrence"] = number(c);
  doc["concurrence_general"] = number(concurrence_general(rho));
  doc["entanglement_of_formation"] = number(entanglement_of_formation(c));
  doc["fidelity"] = number(fidelity(p));
  doc["horodecki_m"] = number(m);
  doc["chsh_value"] = number(2.0 * std::sqrt(m));
  doc["chsh_violated"] = m > 1.0;
  doc["lhvt"] = lhvt;
  return doc;
}

// ---------------------------------------------------------------------------
// fig2: maximal entanglement of formation against success probability

enum class Fig2Curve { Numeric, Eq7, Bell, A01 };

inline const char* fig2_column(Fig2Curve c) {
  switch (c) {
    case Fig2Curve::Numeric: return "EF_max_numeric";
    case Fig2Curve::Eq7: return "EF_eq7";
    case Fig2Curve::Bell: return "EF_bell";
    case Fig2Curve::A01: return "EF_a0.1";
  }
  return "?";
}

inline Fig2Curve parse_fig2_curve(const std::string& name) {
  if (name == "numeric") return Fig2Curve::Numeric;
  if (name == "eq7") return Fig2Curve::Eq7;
  if (name == "bell") return Fig2Curve::Bell;
  if (name == "a0.1") return Fig2Curve::A01;
  throw InvalidArgument("unknown fig2 curve '" + name + "' (expected numeric, eq7, bell or a0.1)");
}

struct Fig2Config {
  std::size_t s_points = 200;  // S = k / s_points, k = 1..s_points
  std::vector<Fig2Curve> curves{Fig2Curve::Numeric, Fig2Curve::Eq7, Fig2Curve::Bell, Fig2Curve::A01};
  std::size_t optimizer_grid = kDefaultOptimizerGrid;
};

/// The small-s approximation is only defined for s < 1; its cell is left
/// empty at s = 1.
inline Table fig2_table(const Fig2Config& cfg) {
  if (cfg.s_points < 2) throw InvalidArgument("fig2 needs at least 2 grid points");
  Table t;
  t.columns.push_back("S");
  for (auto c : cfg.curves) t.columns.push_back(fig2_column(c));
  for (std::size_t k = 1; k <= cfg.s_points; ++k) {
    const double s = static_cast<double>(k) / static_cast<double>(cfg.s_points);
    std::vector<Cell> row{s};
    for (auto c : cfg.curves) {
      switch (c) {
        case Fig2Curve::Numeric:
          row.emplace_back(optimize_prep(s, cfg.optimizer_grid).ef_max);
          break;
        case Fig2Curve::Eq7:
          if (s < 1.0) {
            row.emplace_back(ef_max_asymptotic(s));
          } else {
            row.emplace_back(std::monostate{});
          }
          break;
        case Fig2Curve::Bell:
          row.emplace_back(entanglement_of_formation(concurrence_xstate(PrepParams(kInvSqrt2, s))));
          break;
        case Fig2Curve::A01:
          row.emplace_back(entanglement_of_formation(concurrence_xstate(PrepParams(0.1, s))));
          break;
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline json fig2_config_json(const Fig2Config& cfg) {
  json curves = json::array();
  for (auto c : cfg.curves) curves.push_back(fig2_column(c));
  return {{"s_points", cfg.s_points}, {"curves", curves}, {"optimizer_grid", cfg.optimizer_grid}};
}

// ---------------------------------------------------------------------------
// fig3: region map over the (a, S) plane

inline Table fig3_table(const GridSpec& grid, unsigned threads = default_thread_count()) {
  Table t;
  t.columns = {"a", "S", "EF", "entangled", "chsh", "lhvt"};
  for (const auto& c : region_scan(grid, threads)) {
    t.rows.push_back({c.a, c.s, c.ef, c.entangled, c.chsh, c.lhvt});
  }
  return t;
}

inline json fig3_config_json(const GridSpec& grid) {
  return {{"a_points", grid.a_points}, {"s_points", grid.s_points}};
}

// ---------------------------------------------------------------------------
// simulate

inline std::string setting_name(const MeasurementSetting& st) {
  return std::string{axis_name(st.a), axis_name(st.b)};
}

inline json simulation_report(const SimReport& rep) {
  json cfg = {{"model", rep.kind == DeliveryKind::Bernoulli ? "bernoulli" : "permutation"},
              {"a", number(rep.a)},
              {"trials", rep.trials},
              {"seed", rep.seed}};
  if (rep.kind == DeliveryKind::Bernoulli) {
    cfg["s"] = number(rep.model_s);
  } else {
    cfg["n"] = rep.model_n;
  }
  json doc = envelope("simulate", cfg);
  doc["rng_algorithm"] = rep.rng_algorithm;
  doc["effective_s"] = number(rep.effective_s);
  doc["trials"] = rep.trials;
  doc["outcome_order"] = {"++", "+-", "-+", "--"};
  json settings = json::array();
  for (const auto& r : rep.settings) {
    json freq = json::array(), pred = json::array(), counts = json::array();
    for (std::size_t o = 0; o < 4; ++o) {
      freq.push_back(number(r.freq[o]));
      pred.push_back(number(r.pred[o]));
      counts.push_back(r.counts[o]);
    }
    settings.push_back({{"setting", setting_name(r.setting)},
                        {"counts", counts},
                        {"freq", freq},
                        {"pred", pred},
                        {"intact", r.intact},
                        {"max_sigma", number(r.max_sigma)}});
  }
  doc["basis_settings"] = settings;
  doc["max_sigma"] = number(rep.max_sigma);
  doc["sigma_threshold"] = number(kSigmaThreshold);
  doc["passes"] = rep.passes();
  try {
    const auto est = estimate_concurrence(rep);
    doc["concurrence_estimate"] = {{"value", number(est.value)}, {"std_error", number(est.std_error)}};
  } catch (const InvalidArgument&) {
    doc["concurrence_estimate"] = nullptr;  // partial setting list
  }
  doc["concurrence_predicted"] = number(concurrence_xstate(PrepParams(rep.a, rep.effective_s)));
  return doc;
}

// ---------------------------------------------------------------------------
// bounds

struct BoundsQuery {
  std::optional<double> survival_a;
  std::optional<double> chsh_a;
  std::optional<long long> eisert_n;
};

inline json bounds_report(const BoundsQuery& q) {
  if (!q.survival_a && !q.chsh_a && !q.eisert_n) {
    throw InvalidArgument("bounds: request at least one of --survival, --chsh, --eisert");
  }
  json cfg = json::object();
  json doc;
  if (q.survival_a) {
    const double a = *q.survival_a;
    const double analytic = survival_threshold(a);
    const double bisect = survival_threshold_bisection(a);
    cfg["survival_a"] = number(a);
    doc["survival"] = {{"a", number(a)},
                       {"threshold", number(analytic)},
                       {"method", "analytic"},
                       {"bisection", number(bisect)},
                       {"bisection_delta", number(std::abs(analytic - bisect))}};
  }
  if (q.chsh_a) {
    const double a = *q.chsh_a;
    const double analytic = chsh_boundary(a);
    const double bisect = chsh_boundary_bisection(a);
    cfg["chsh_a"] = number(a);
    doc["chsh"] = {{"a", number(a)},
                   {"threshold", number(analytic)},
                   {"method", "analytic"},
                   {"bisection", number(bisect)},
                   {"bisection_delta", number(std::abs(analytic - bisect))}};
  }
  if (q.eisert_n) {
    const long long n = *q.eisert_n;
    const double bound = eisert_lower_bound(n);
    const auto opt = optimize_prep(1.0 / static_cast<double>(n));
    cfg["eisert_n"] = n;
    doc["eisert"] = {{"n", n},
                     {"s", number(opt.s)},
                     {"ef_max", number(opt.ef_max)},
                     {"lower_bound", number(bound)},
                     {"method", "optimizer"}};
  }
  json out = envelope("bounds", cfg);
  out.update(doc);
  return out;
}

}  // namespace inept::cli
